import numpy as np
import pytest
from hypothesis import given, strategies as st

from chford.hermitian import (CAYLEY, H, J, DomainError, bergman_distance, cayley_transform,
                              hermitian_product, projective_equal, su_normalize)
from chford.heisenberg import lift_array
from chford.triangle import build, evaluate

cfloat = st.floats(-5, 5, allow_nan=False)
cvec = st.tuples(*[st.tuples(cfloat, cfloat)] * 3).map(lambda v: np.array([complex(a, b) for a, b in v]))


def test_product_examples():
    assert hermitian_product([1, 0, 0], [1, 0, 0]) == 0
    assert hermitian_product([1, 0, 1], [1, 0, 1]) == 2
    assert hermitian_product([0, 0, 1], [0, 0, 1]) == 0


@given(cvec, cvec, cvec, cfloat, cfloat)
def test_product_sesquilinear(z, w, v, a, b):
    lam = complex(a, b)
    assert np.isclose(hermitian_product(z, w), np.conj(hermitian_product(w, z)))
    lhs = hermitian_product(lam * z + v, w)
    assert np.isclose(lhs, lam * hermitian_product(z, w) + hermitian_product(v, w), atol=1e-9)


def test_cayley():
    assert np.allclose(cayley_transform([1, 0, 0]), np.array([1, 0, 1]) / np.sqrt(2))
    assert np.max(np.abs(CAYLEY.conj().T @ H @ CAYLEY - J)) < 1e-12
    th = 0.7
    img = cayley_transform(np.array([-1, np.exp(1j * th), 1]))
    # the fixed point of S goes to the vertical axis: first coordinate vanishes
    assert abs(img[0]) < 1e-12
    assert np.isclose(img[1], np.exp(1j * th))


@given(cvec)
def test_cayley_round_trip(p):
    back = cayley_transform(cayley_transform(p, "toBall"), "toSiegel")
    assert np.allclose(back, p, atol=1e-12)


def test_bergman_examples():
    u = lift_array(0, 0, 1.0)
    v = lift_array(0, 0, 4.0)
    d = bergman_distance(u, v)
    assert np.isclose(np.cosh(d / 2) ** 2, 25 / 16)
    assert bergman_distance(u, u) == 0
    with pytest.raises(DomainError):
        bergman_distance(lift_array(1.0, 0.0), u)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.01, 5),
       st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.01, 5))
def test_bergman_symmetric(x1, y1, t1, u1, x2, y2, t2, u2):
    a = lift_array(complex(x1, y1), t1, u1)
    b = lift_array(complex(x2, y2), t2, u2)
    d1, d2 = bergman_distance(a, b), bergman_distance(b, a)
    assert d1 >= 0 and np.isclose(d1, d2, atol=1e-9)
    # arccosh near 1 leaves about sqrt(eps) of resolution
    assert bergman_distance(a, 3j * a) < 1e-5


def test_projective_equal_examples():
    assert projective_equal(np.array([1, 2, 3]), 1j * np.array([1, 2, 3])) == (True, 0.0) or \
        projective_equal(np.array([1, 2, 3]), 1j * np.array([1, 2, 3]))[1] < 1e-15
    assert not projective_equal(np.array([1, 0, 0]), np.array([0, 1, 0]))[0]
    g = build(0.3)
    ok, res = projective_equal(evaluate(g, "SSSS").matrix, np.eye(3))
    assert ok and res < 1e-9
    with pytest.raises(DomainError):
        projective_equal(np.zeros(3), np.ones(3))


def test_cube_roots_are_projectively_trivial():
    w = np.exp(2j * np.pi / 3)
    assert projective_equal(w * np.eye(3), np.eye(3))[0]
    assert np.isclose(np.linalg.det(su_normalize(5 * np.eye(3))), 1)
