import numpy as np
import pytest

from chford.boundary import (CycleError, INCIDENCES, OCTAGONS, P_FACES, PAPER_RELATORS, curve_c, edge_cycles,
                             named_points, plane_sections, polyhedron_P, relator_of, tube_complex,
                             verify_curve_c0, verify_edge_cycles, verify_incidences, verify_plane_sections,
                             verify_polyhedron, verify_rcircle, verify_tube_complex, x_word_to_st)
from chford.heisenberg import INF, HeisenbergPoint, heisenberg_product
from chford.spheres import SphereId

R3 = np.sqrt(3)


@pytest.fixture(scope="module")
def pts():
    return named_points()


def test_named_point_examples(pts):
    p3 = heisenberg_product(HeisenbergPoint(2 + 0j, 4 * R3), pts["p2"])
    assert abs(p3.z - pts["p3"].z) < 1e-12 and abs(p3.t - pts["p3"].t) < 1e-12
    assert abs(pts["p1"].z) < 1e-12 and abs(pts["p1"].t) < 1e-12
    assert abs(pts["q2"].z - (-3 + 1j * R3) / 2) < 1e-15 and pts["q2"].t == -R3
    assert pts["qinf"] is INF


def test_incidences():
    rep = verify_incidences()
    assert rep.ok, [c.id for c in rep.failures()]
    ids = {c.id for c in rep.claims}
    assert "incidence:p2@star-1" in ids and "fixed:q3<-ST^-1S" in ids
    assert all(f"incidence:p4@{s}" in ids for s in ("plus0", "minus0", "star0"))
    assert len(INCIDENCES["p2"]) == 4


def test_plane_sections():
    secs = plane_sections(K=3)
    assert secs[(0, SphereId("plus", 0))][0] == "circle"
    assert secs[(0, SphereId("diamond", 0))][0] == "point"
    assert secs[(0, SphereId("diamond", 1))][0] == "point"
    assert secs[(0, SphereId("plus", 2))][0] == "empty"
    assert verify_plane_sections().ok


def test_curve_c0(pts):
    cp, cm = curve_c(0, 1000)
    for arc in (cp, cm):
        ends = {round(arc.start.t, 6), round(arc.end.t, 6)}
        assert ends == {round(pts["q3"].t, 6), round(pts["v0"].t, 6)}
    rep = verify_curve_c0()
    assert rep.ok, [(c.id, c.margin) for c in rep.failures()]


def test_rcircle():
    assert verify_rcircle().ok


def test_tube_complex():
    cx = tube_complex()
    assert (len(cx.vertices), len(cx.edges), len(cx.faces)) == (13, 23, 12)
    assert cx.euler() == 2
    assert all(c == 2 for c in cx.edge_face_counts().values())
    assert cx.faces["(T1)0*"][0] == ("p2", "p5", "p6")
    assert OCTAGONS["O0+"][0] == ("p2", "p6", "p4", "p7", "q3", "p8", "p11", "p9")
    rep = verify_tube_complex()
    assert rep.ok, [c.id for c in rep.failures()]


def test_polyhedron_pairings():
    cx, pairs = polyhedron_P()
    assert len(pairs) == 8 and len(cx.faces) == 16
    assert cx.euler() == 2
    rep = verify_polyhedron()
    pairing = [c for c in rep.claims if c.kind == "face-pairing"]
    assert pairing and all(c.status for c in pairing)


def test_polyhedron_census():
    """Face shapes of P: 8 triangles, 4 squares, 2 pentagons, 2 hexagons."""
    cx, _ = polyhedron_P()
    assert cx.census() == {3: 8, 4: 4, 5: 2, 6: 2}


def test_edge_cycles():
    cycles = edge_cycles()
    assert len(cycles) == 9
    rels = {relator_of(c[1]) for c in cycles}
    assert "x7^-1 x5 x7 x1" in rels
    assert x_word_to_st("x2 x3 x2") == "sTsTsTsT"
    assert x_word_to_st("x8^-1 x7") == ""
    rep = verify_edge_cycles()
    assert rep.ok, [c.id for c in rep.failures()]


def test_cycle_error_on_open_gluing(monkeypatch):
    import chford.boundary as b

    broken = dict(P_FACES)
    broken["F8"] = ("p6", "p2'", "p5")
    monkeypatch.setattr(b, "P_FACES", broken)
    with pytest.raises(CycleError):
        b.edge_cycles()
