"""The ideal boundary at theta = pi/3: vertices, cells, gluings and the group."""
from chford.boundary import (edge_cycles, named_points, polyhedron_P, relator_of, tube_complex,
                             verify_incidences)
from chford.presentation import S782, UVW, abelianization, format_abelian

pts = named_points()
for lab in ("q2", "q3", "p2", "p3", "p4", "p1"):
    p = pts[lab]
    print(f"{lab:4s} z={p.z:.5f}  t={p.t:+.5f}")
print("incidences:", verify_incidences().summary()["all_pass"])

cx = tube_complex()
print(f"\ntube boundary: V={len(cx.vertices)} E={len(cx.edges)} F={len(cx.faces)} chi={cx.euler()}")

P, pairs = polyhedron_P()
print(f"polyhedron P: chi={P.euler()}, faces by size {P.census()}")
for fp in pairs:
    print(f"  {fp.name} = {fp.word:10s} {fp.source_face} -> {fp.target_face}")

print("\nedge cycles")
for edge, letters in edge_cycles():
    print(f"  [{edge[0]}, {edge[1]}]  {relator_of(letters)} = id")

print("\n", UVW, "\n", S782)
print("H1:", format_abelian(*abelianization(UVW)), "and", format_abelian(*abelianization(S782)))
