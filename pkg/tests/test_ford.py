import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chford.hermitian import DomainError
from chford.heisenberg import HeisenbergPoint, HorosphericalPoint, lift_array, standard_lift
from chford.ford import (center_distance, cycle_check, ford_margin, ford_margin_lifts, horoball_consistency,
                         side_pairing_table, verify_pairwise, verify_triple)
from chford.spheres import sphere_of
from chford.triangle import PI3, build, evaluate

R3 = np.sqrt(3)


def test_margin_examples():
    xs = np.linspace(-0.5, 1.5, 41)[1:-1]
    xs = xs[np.abs(xs - 0.5) > 1e-9]
    m = ford_margin_lifts(lift_array(xs + 1j * R3 / 2, R3 * xs), PI3)
    assert np.all(m < 0)
    assert ford_margin(HorosphericalPoint(0j, 0.0, 10.0), PI3) > 0
    assert np.isclose(ford_margin(HeisenbergPoint(0j, 0.0), PI3), -2)
    with pytest.raises(DomainError):
        ford_margin(HeisenbergPoint(0j, 0.0), PI3, K=1)


def test_center_distance_formulas():
    th = 0.7
    d, rsum = center_distance(("plus", 0), ("minus", 3), th)
    assert np.isclose(d, 2 * np.sqrt(np.sin(th) ** 2 + 49 * np.cos(th) ** 2)) and d > rsum
    d, rsum = center_distance(("star", 0), ("star", 1), th)
    assert np.isclose(d, 4 * np.cos(th)) and d > rsum == 2


fl = st.floats(-3, 3)


@given(fl, fl, fl, st.floats(0, 2))
def test_t_equivariance(x, y, t, u):
    g = build(PI3)
    v = lift_array(complex(x, y), t, u)
    a = ford_margin_lifts(v, PI3, 5)
    b = ford_margin_lifts(g.T.act(v), PI3, 5)
    # translation by T shifts the window by one; restrict to points near the slab
    assert np.isclose(a, b, atol=1e-9) or abs(x) > 2.5


def test_window_sufficiency(rng):
    v = lift_array(rng.uniform(-1.5, 0.5, 2000) + 1j * rng.uniform(-1, 2, 2000), rng.uniform(-4, 4, 2000))
    m5, idx = ford_margin_lifts(v, PI3, 5, return_index=True)
    m8 = ford_margin_lifts(v, PI3, 8)
    assert np.max(np.abs(m5 - m8)) < 1e-12


@pytest.mark.parametrize("theta", [0.0, 0.5, PI3])
def test_pairwise_suite(theta):
    rep = verify_pairwise(theta)
    assert rep.ok, [c.id for c in rep.failures()]
    d = rep.to_dict()
    assert d["claims"] == sorted(d["claims"], key=lambda c: c["id"])
    json.loads(rep.to_json())


def test_pairwise_example_pi3():
    # star0 / minus-1 is stored in its T-translate minus0 / star1
    rep = verify_pairwise(PI3)
    by = {c.id: c for c in rep.claims}
    for cid in ("meet:minus0|star1", "contain:minus0&star1<plus1", "tangent:minus0&star1|plus1"):
        assert by[cid].status
    assert by["contain:minus0&star1<plus1"].detail["samples"] >= 10_000


@pytest.mark.parametrize("theta", [0.0, 0.3, 0.6, 0.9, PI3 - 0.02])
def test_triple_empty(theta):
    rep = verify_triple(theta)
    (c,) = rep.claims
    assert c.status and c.margin > 1e-3


def test_triple_pi3():
    (c,) = verify_triple(PI3).claims
    assert c.status and c.detail["distance_to_p2"] < 1e-6


def test_pairings_and_cycles():
    table, rep = side_pairing_table(PI3)
    assert rep.ok and len(table) >= 3
    rep = cycle_check(PI3)
    assert rep.ok
    g = build(0.4)
    assert evaluate(g, "SSSS").is_identity() and evaluate(g, "tStStStS").is_identity()


def test_horoballs():
    rep = horoball_consistency(PI3)
    assert rep.ok
    g = build(PI3)
    e = evaluate(g, "(T^-1S^2)^2")
    assert abs(e.trace() - 3) < 1e-9 and not e.is_identity()
    with pytest.raises(DomainError):
        horoball_consistency(1.0)
