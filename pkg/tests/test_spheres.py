import numpy as np
import pytest
from hypothesis import given, strategies as st

from chford.hermitian import DomainError, hermitian_product, projective_equal
from chford.heisenberg import HeisenbergPoint, coords_from_lifts, from_lift, lift_array, standard_lift
from chford.spheres import (FAMILIES, SphereId, f_eval, geographic_lift, giraud_trace, isometric_sphere,
                            side_of, side_of_lifts, sphere_from_word, sphere_lift, sphere_of,
                            tangency_points, triple_curves, triple_endpoint_lifts)
from chford.triangle import PI3, build, evaluate

R2, R3 = np.sqrt(2), np.sqrt(3)


def test_isometric_sphere_examples():
    for th in (0.0, 0.6, PI3):
        g = build(th)
        s = isometric_sphere(g.S)
        assert abs(s.center.z) < 1e-12 and abs(s.center.t) < 1e-12 and np.isclose(s.radius, R2)
        s2 = isometric_sphere(g.S @ g.S)
        assert abs(s2.center.z - np.exp(1j * th)) < 1e-12 and abs(s2.center.t) < 1e-12
        assert np.isclose(s2.radius, 1)
        with pytest.raises(DomainError):
            isometric_sphere(g.T)


def test_sphere_table_examples():
    s = sphere_of(("minus", 0), 0.4)
    assert abs(s.center.z - 2 * np.exp(0.4j)) < 1e-15 and s.center.t == 0 and np.isclose(s.radius, R2)
    d = sphere_of(("diamond", 1), PI3)
    assert abs(d.center.z - (2 - np.exp(-1j * PI3))) < 1e-12 and np.isclose(d.center.t, 4 * np.sin(2 * PI3))
    g = build(PI3)
    for k in (-2, 1, 3):
        c = g.T.matrix
        p = from_lift(np.linalg.matrix_power(c, k) @ standard_lift(HeisenbergPoint(0j, 0.0)))
        s = sphere_of(("plus", k), PI3)
        assert abs(p.z - s.center.z) < 1e-9 and abs(p.t - s.center.t) < 1e-9


@pytest.mark.parametrize("theta", np.linspace(0, PI3, 10))
def test_table_agrees_with_words(theta):
    g = build(theta)
    for f in FAMILIES:
        for k in range(-3, 4):
            a, b = sphere_of((f, k), theta), sphere_from_word((f, k), g)
            assert abs(a.center.z - b.center.z) < 1e-9 and abs(a.center.t - b.center.t) < 1e-9
            assert abs(a.radius - b.radius) < 1e-9


def test_unipotent_invariance():
    g = build(0.7)
    s = isometric_sphere(g.S)
    for m in range(-2, 3):
        s2 = isometric_sphere(evaluate(g, "T" * m if m >= 0 else "t" * -m) @ g.S)
        assert abs(s2.center.z - s.center.z) < 1e-9 and abs(s2.center.t - s.center.t) < 1e-9


def test_side_of_examples():
    s = sphere_of(("plus", 0), PI3)
    assert np.isclose(side_of(s.center, s), -2)
    p2 = HeisenbergPoint(np.exp(2j * np.pi / 3), -R3)
    assert abs(side_of(p2, sphere_of(("star", 0), PI3))) < 1e-9
    assert side_of(HeisenbergPoint(100 + 0j, 0.0), s) > 0


def test_geographic_examples():
    th = 0.8
    assert np.allclose(geographic_lift(0, th, R2 / 2, R2), [-1, np.exp(1j * th), 1])
    g3 = build(PI3)
    q = geographic_lift(-PI3, np.pi / 2, R2 / 2, R2)
    assert projective_equal(q, standard_lift(HeisenbergPoint(np.exp(2j * np.pi / 3), -R3)))[0]
    a = 0.4
    v = geographic_lift(a, 1.0, np.sqrt(np.cos(a)), 1.3)
    assert abs(hermitian_product(v, v)) < 1e-12
    with pytest.raises(DomainError):
        geographic_lift(a, 1.0, 1.0, 1.0)


ang = st.floats(-np.pi / 2 + 1e-3, np.pi / 2 - 1e-3)


@given(ang, st.floats(0, np.pi), st.floats(-1, 1), st.floats(0.2, 3))
def test_geographic_on_sphere(a, b, s, r):
    w = s * np.sqrt(np.cos(a))
    z, t, u = coords_from_lifts(geographic_lift(a, b, w, r))
    assert np.isclose((abs(z) ** 2 + u) ** 2 + t ** 2, r ** 4, rtol=1e-9)


def test_f_examples():
    th = 0.5
    for a in (-1.0, 0.3, 1.2):
        assert np.isclose(f_eval("star0", th, a, a / 2 + th, R2 / 2), 1 - np.cos(a))
    assert abs(f_eval("minusMinus1", PI3, -PI3, np.pi / 2, R2 / 2)) < 1e-12
    with pytest.raises(ValueError):
        f_eval("plus7", th, 0, 0, 0)


@pytest.mark.parametrize("which,sid", [("star0", ("star", 0)), ("minus0", ("minus", 0)),
                                       ("minusMinus1", ("minus", -1))])
def test_f_sign_matches_margin(which, sid, rng):
    th = 0.9
    n = 10_000
    a = rng.uniform(-np.pi / 2, np.pi / 2, n)
    b = rng.uniform(0, np.pi, n)
    w = rng.uniform(-1, 1, n) * np.sqrt(np.cos(a))
    f = f_eval(which, th, a, b, w)
    m = side_of_lifts(sphere_lift(sphere_of(("plus", 0), th), a, b, w), sphere_of(sid, th))
    keep = np.abs(f) > 1e-9
    assert np.all(np.sign(f[keep]) == np.sign(m[keep]))


def test_pairing_maps_sphere_to_inverse_sphere(rng):
    th = 0.6
    g = build(th)
    for word in ("S", "SS", "sT", "TTStt"):
        e = evaluate(g, word)
        src, dst = isometric_sphere(e), isometric_sphere(e.inv())
        a = rng.uniform(-1.5, 1.5, 200)
        b = rng.uniform(0, np.pi, 200)
        w = rng.uniform(-1, 1, 200) * np.sqrt(np.cos(a))
        lifts = sphere_lift(src, a, b, w)
        assert np.max(np.abs(side_of_lifts(e.act(lifts), dst))) < 1e-8
        outside = lift_array(src.center.z + 3 * src.radius, src.center.t)
        assert side_of_lifts(e.act(outside), dst) < 0


def test_giraud_examples():
    tr = giraud_trace(sphere_of(("plus", 0), PI3), sphere_of(("plus", 1), PI3), PI3, grid=128)
    assert tr.empty and tr.min_margin > 0
    th = 0.5
    tr = giraud_trace(sphere_of(("plus", 0), th), sphere_of(("minus", 0), th), th, grid=256)
    assert len(tr) > 100
    assert np.max(np.abs(tr.residual)) < 1e-10 and np.max(np.abs(tr.base_residual)) < 1e-10
    # the crossing point q(0, theta, sqrt2/2) lies on the traced surface
    d = np.abs(tr.alpha) + np.abs(tr.beta - th) + np.abs(tr.w - R2 / 2)
    assert d.min() < 0.05
    for th in (0.0, 0.5, PI3):
        tr = giraud_trace(sphere_of(("star", 0), th), sphere_of(("diamond", 0), th), th, grid=256)
        if len(tr):
            m = side_of_lifts(tr.lifts, sphere_of(("plus", 0), th))
            assert m.max() < 1e-7
            z, t, u = coords_from_lifts(tr.lifts)
            assert np.all((abs(z) ** 2 + u) ** 2 + t ** 2 < 4 + 1e-7)


@pytest.mark.parametrize("theta", [0.0, 0.5, PI3])
def test_triple_curves(theta):
    g = build(theta)
    tc = triple_curves(theta, 100)
    plus = sphere_of(("plus", 0), theta)
    for arr in (tc.L1, tc.C1, tc.C2):
        lifts = sphere_lift(plus, arr[:, 0], arr[:, 1], arr[:, 2], check=False)
        for sid in (("minus", 0), ("star", 0)):
            assert np.max(np.abs(side_of_lifts(lifts, sphere_of(sid, theta)))) < 1e-10
    center = geographic_lift(*tc.center, R2)
    assert projective_equal(g.S.matrix @ center, center)[0]
    ends = triple_endpoint_lifts(theta)
    imgs = [g.S.matrix @ v for v in ends]
    # S permutes the four endpoints cyclically
    perm = [next(j for j, v in enumerate(ends) if projective_equal(im, v, 1e-9)[0]) for im in imgs]
    assert sorted(perm) == [0, 1, 2, 3] and all(p != i for i, p in enumerate(perm))
    cyc, i = [0], perm[0]
    while i != 0:
        cyc.append(i)
        i = perm[i]
    assert len(cyc) == 4


def test_tangencies():
    tans = tangency_points(PI3)
    p2 = HeisenbergPoint(np.exp(2j * np.pi / 3), -R3)
    q3 = HeisenbergPoint((1 + 1j * R3) / 2, R3)
    for tg in tans:
        for sid in tg.spheres:
            assert abs(side_of(tg.point, sphere_of(sid, PI3))) < 1e-9
    by = {tuple(str(s) for s in t.spheres): t for t in tans}
    t = by[("star0", "star-1")]
    assert abs(t.point.z - p2.z) < 1e-9 and abs(t.point.t - p2.t) < 1e-9
    t = by[("diamond0", "diamond1")]
    assert abs(t.point.z - q3.z) < 1e-9 and abs(t.point.t - q3.t) < 1e-9
    t = by[("star0", "star1")]
    assert t.word == "SSt"
    with pytest.raises(DomainError):
        tangency_points(1.0)
