"""Acceptance criteria 1-10.  Each test records a PASS/FAIL line shown in the summary."""
import json
import tempfile
from pathlib import Path

import numpy as np

from chford.boundary import named_points, polyhedron_P, tube_complex, verify_edge_cycles, verify_incidences, \
    verify_polyhedron
from chford.export import export_figure, file_metadata
from chford.ford import cycle_check, side_pairing_table, verify_pairwise, verify_triple
from chford.hermitian import projective_residual
from chford.heisenberg import standard_lift
from chford.presentation import S782, UVW, abelianization, verify_presentation
from chford.spheres import FAMILIES, sphere_from_word, sphere_of
from chford.triangle import PI3, build, eisenstein_residual, evaluate

from conftest import ACCEPTANCE

GOLDEN = Path(__file__).with_name("golden") / "figures.json"


def record(n, ok, detail):
    ok = bool(ok)
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_trace_law():
    errs = [abs(build(th).trace_I1I3I2I3() - (7 + 8 * np.cos(2 * th))) for th in np.linspace(0, PI3, 50)]
    record(1, max(errs) < 1e-10, f"max |tr - (7+8cos2t)| = {max(errs):.2e} over 50 thetas")


def test_criterion_02_order_four():
    res = []
    for th in np.linspace(0, PI3, 20):
        g = build(th)
        res.append(projective_residual(evaluate(g, "SSSS").matrix, np.eye(3)))
        res.append(projective_residual(evaluate(g, "(T^-1S)^4").matrix, np.eye(3)))
    record(2, max(res) < 1e-9, f"max residual of S^4, (T^-1S)^4 = {max(res):.2e} over 20 thetas")


def test_criterion_03_sphere_table():
    worst = 0.0
    for th in np.linspace(0, PI3, 10):
        g = build(th)
        for f in FAMILIES:
            for k in range(-3, 4):
                a, b = sphere_of((f, k), th), sphere_from_word((f, k), g)
                worst = max(worst, abs(a.center.z - b.center.z), abs(a.center.t - b.center.t),
                            abs(a.radius - b.radius))
    record(3, worst < 1e-9, f"max table/word deviation = {worst:.2e} (4 families, k=-3..3, 10 thetas)")


def test_criterion_04_triple_lemma():
    (c,) = verify_triple(PI3).claims
    d = c.detail["distance_to_p2"]
    mins = {th: verify_triple(th).claims[0].margin for th in (0.0, 0.3, 0.6, 0.9, PI3 - 0.02)}
    ok = d < 1e-6 and all(v > 1e-3 for v in mins.values())
    record(4, ok, f"minimizer to p2 = {d:.2e}; smallest residual elsewhere = {min(mins.values()):.3g}")


def test_criterion_05_intersections():
    bad, n_contain, n_tangent = [], 0, 0
    for th in (0.0, 0.5, PI3):
        rep = verify_pairwise(th)
        for c in rep.claims:
            if not c.status:
                bad.append(f"{th:.3f}:{c.id}")
            if c.kind == "containment":
                n_contain += 1
                if not c.detail.get("empty") and (c.detail["samples"] < 10_000 or c.detail["violations"]):
                    bad.append(f"{th:.3f}:{c.id}:samples")
            if c.kind == "tangency":
                n_tangent += 1
                if c.detail["location_error"] >= 1e-8:
                    bad.append(f"{th:.3f}:{c.id}:location")
    record(5, not bad and n_tangent > 0,
           f"{n_contain} containment and {n_tangent} tangency claims; failures: {bad or 'none'}")


def test_criterion_06_pairings_cycles():
    _, rep = side_pairing_table(PI3, n=100)
    rep2 = cycle_check(PI3, n=100)
    g = build(PI3)
    e = evaluate(g, "(T^-1S^2)^2")
    p2 = named_points()["p2"]
    fix = projective_residual(e.matrix @ standard_lift(p2), standard_lift(p2))
    ok = rep.ok and rep2.ok and abs(e.trace() - 3) < 1e-9 and not e.is_identity() and fix < 1e-9
    record(6, ok, f"pairings {rep.summary()['passed']}/{len(rep.claims)}, cycles {rep2.summary()['passed']}/"
                  f"{len(rep2.claims)}, tr (T^-1S^2)^2 = {e.trace().real:.12g}, fixes p2 to {fix:.1e}")


def test_criterion_07_boundary_complex():
    inc = verify_incidences()
    cx = tube_complex()
    counts = (len(cx.vertices), len(cx.edges), len(cx.faces))
    P, _ = polyhedron_P()
    census = P.census()
    pair = [c for c in verify_polyhedron().claims if c.kind == "face-pairing"]
    want = {3: 8, 4: 4, 5: 2, 6: 2}
    ok = inc.ok and counts == (13, 23, 12) and cx.euler() == 2 and census == want and all(c.status for c in pair)
    record(7, ok, f"incidences {'ok' if inc.ok else 'FAIL'}; tube V,E,F = {counts}, chi = {cx.euler()}; "
                  f"P census {census} (want {want}); face pairings "
                  f"{sum(c.status for c in pair)}/{len(pair)}")


def test_criterion_08_group_theory():
    cyc = verify_edge_cycles()
    pres = verify_presentation()
    ab = (abelianization(UVW), abelianization(S782))
    ok = cyc.ok and pres.ok and ab[0] == ab[1] == (2, [2])
    record(8, ok, f"edge cycles {cyc.summary()['passed']}/{len(cyc.claims)}, relators "
                  f"{pres.summary()['passed']}/{len(pres.claims)}, abelianizations {ab[0]} and {ab[1]}")


def test_criterion_09_eisenstein():
    g = build(PI3)
    worst = max(eisenstein_residual(x) for m in (g.S.matrix, (g.I3 @ g.I1).matrix) for x in m.ravel())
    record(9, worst < 1e-9, f"max distance of S, I3I1 entries to Z[omega] = {worst:.2e}")


def _close_meta(a, b):
    if a["points"] != b["points"] or not a["points"]:
        return False
    return np.allclose(np.array(a["bbox"]), np.array(b["bbox"]), rtol=1e-9, atol=1e-9)


def test_criterion_10_figures():
    import sys

    sys.path.insert(0, str(GOLDEN.parent))
    from regenerate import CASES

    golden = json.loads(GOLDEN.read_text())
    bad = []
    with tempfile.TemporaryDirectory() as d:
        for name, theta in CASES:
            key = f"{name}@{theta:.6f}"
            for p in export_figure(name, Path(d) / key, theta):
                ref = golden.get(key, {}).get(p.name)
                if ref is None or p.stat().st_size == 0 or not _close_meta(file_metadata(p), ref):
                    bad.append(f"{key}/{p.name}")
    record(10, not bad, f"{len(CASES)} figure exports checked against golden metadata; mismatches: {bad or 'none'}")
