import numpy as np
import pytest
from hypothesis import given, strategies as st

from chford.hermitian import DomainError, H, projective_equal
from chford.heisenberg import HeisenbergPoint
from chford.triangle import (PI3, build, conjugate_word, eisenstein_residual, evaluate, i2_conjugate,
                             parse_word, tau_conjugate, tau_point)

R3 = np.sqrt(3)
thetas = st.floats(0, np.pi / 2 - 1e-6)
words = st.text(alphabet="SsTt", max_size=12)


def test_S_at_pi3():
    g = build(PI3)
    S = np.array([[2, 1 - 1j * R3, -1], [-1 - 1j * R3, -1, 0], [-1, 0, 0]])
    assert projective_equal(g.S.matrix, S)[0]


def test_build_range():
    with pytest.raises(DomainError):
        build(np.pi / 2)
    with pytest.raises(DomainError):
        build(-0.1)
    assert build(PI3).parabolic_case and not build(1.0).parabolic_case


def test_real_at_zero():
    g = build(0.0)
    for m in (g.I1, g.I2, g.I3, g.S, g.T):
        assert np.max(np.abs(m.matrix.imag)) < 1e-12


@given(thetas)
def test_unitary_and_trace_law(theta):
    g = build(theta)
    for m in (g.I1, g.I2, g.I3, g.S, g.T):
        assert np.max(np.abs(m.matrix.conj().T @ H @ m.matrix - H)) < 1e-10
    assert abs(g.trace_I1I3I2I3() - (7 + 8 * np.cos(2 * theta))) < 1e-10


def test_evaluate_examples():
    g = build(0.9)
    assert evaluate(g, "SSSS").is_identity()
    assert evaluate(g, "tStStStS").is_identity()
    assert evaluate(g, "").is_identity()


def test_parse_word():
    assert parse_word("(T^-1S)^2 T") == "tStST"
    assert parse_word("T^-1S^2") == "tSS"
    assert parse_word("ST⁻¹S") == "StS"
    assert parse_word("(S^-1T)^2") == "sTsT"
    assert parse_word("SsT") == "T"
    assert conjugate_word("S", 2) == "TTStt"
    assert conjugate_word("S", -1) == "tST"


@given(thetas, words)
def test_tau_is_involutive(theta, w):
    g = build(theta)
    m = evaluate(g, w)
    # renormalizing by the determinant costs about eps * scale^3 on long words
    scale = np.abs(m.matrix).max()
    assert projective_equal(tau_conjugate(tau_conjugate(m)).matrix, m.matrix, 1e-14 * scale ** 3 + 1e-12)[0]


@given(thetas)
def test_symmetries(theta):
    g = build(theta)
    Ti, Si = g.T.inv(), g.S.inv()
    assert projective_equal(tau_conjugate(g.T).matrix, Ti.matrix, 1e-9)[0]
    assert projective_equal(tau_conjugate(g.S).matrix, (Ti @ g.S).matrix, 1e-9)[0]
    assert projective_equal(tau_conjugate(g.I3).matrix, g.I3.matrix, 1e-9)[0]
    assert projective_equal(i2_conjugate(g, g.S).matrix, Si.matrix, 1e-9)[0]
    assert projective_equal(i2_conjugate(g, g.T).matrix, Ti.matrix, 1e-9)[0]
    assert projective_equal(i2_conjugate(g, np.eye(3)).matrix, np.eye(3))[0]
    D = np.diag([1, -1, 1])
    assert projective_equal(D @ g.n3.conj(), g.n3)[0]
    assert projective_equal(D @ g.n1.conj(), g.n2)[0]


def test_tau_point_matches_matrix_action():
    g = build(PI3)
    p = HeisenbergPoint(0.3 + 0.7j, -1.1)
    q = tau_point(p)
    assert abs(q.z - (-0.3 + 0.7j)) < 1e-15 and q.t == 1.1


def test_eisenstein():
    g = build(PI3)
    for m in (g.S.matrix, (g.I3 @ g.I1).matrix):
        assert max(eisenstein_residual(x) for x in m.ravel()) < 1e-9
    assert eisenstein_residual(0.5 + 0j) > 0.4
