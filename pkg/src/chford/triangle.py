"""The one-parameter family of (4,4,inf) triangle groups generated by three
complex involutions, and the subgroup <S, T> with S = I2 I3, T = I2 I1.

>>> g = build(np.pi / 3)
>>> round(g.trace_I1I3I2I3().real, 9)
3.0
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .hermitian import DomainError, is_h_unitary, su_normalize
from .heisenberg import HeisenbergPoint, INF, Infinity
from .isometry import GroupElement, complex_involution, reduce_word

PI3 = np.pi / 3
PARABOLIC_CUTOFF = 1e-12
D_TAU = np.diag([1, -1, 1]).astype(complex)

_TOKEN = re.compile(r"\(([^()]*)\)(?:\^(-?\d+))?|([STst])(?:\^(-?\d+))?")


def parse_word(text: str) -> str:
    """Turn notation such as ``"T^-1 S^2"`` or ``"(T^-1S)^2 T"`` into a letter string.

    Letters are ``S s T t`` with lower case meaning inverse; plain letter
    strings pass through unchanged.  Nested parentheses are not supported.
    """
    text = text.replace(" ", "").replace("⁻¹", "^-1")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at {pos}")
        if m.group(1) is not None:
            base, exp = parse_word(m.group(1)), m.group(2)
        else:
            base, exp = m.group(3), m.group(4)
        n = int(exp) if exp else 1
        piece = base if n >= 0 else base[::-1].swapcase()
        out.append(piece * abs(n))
        pos = m.end()
    return reduce_word("".join(out))


def conjugate_word(word: str, k: int) -> str:
    """T^k word T^-k."""
    return reduce_word(("T" if k >= 0 else "t") * abs(k) + word + ("t" if k >= 0 else "T") * abs(k))


@dataclass(frozen=True)
class TriangleGroup:
    theta: float
    n1: np.ndarray
    n2: np.ndarray
    n3: np.ndarray
    I1: GroupElement
    I2: GroupElement
    I3: GroupElement
    S: GroupElement
    T: GroupElement
    parabolic_case: bool

    def letter(self, ch: str) -> np.ndarray:
        return {"S": self.S.matrix, "T": self.T.matrix, "s": self._Si, "t": self._Ti}[ch]

    @property
    def _Si(self):
        return np.linalg.inv(self.S.matrix)

    @property
    def _Ti(self):
        return np.linalg.inv(self.T.matrix)

    def evaluate(self, word: str) -> GroupElement:
        return evaluate(self, word)

    def trace_I1I3I2I3(self) -> complex:
        return np.trace(self.I1.matrix @ self.I3.matrix @ self.I2.matrix @ self.I3.matrix)


def build(theta: float) -> TriangleGroup:
    if not 0 <= theta < np.pi / 2:
        raise DomainError("theta must lie in [0, pi/2)")
    e = np.exp(1j * theta)
    n1 = np.array([e, 1, 0], dtype=complex)
    n2 = np.array([-np.conj(e), 1, 0], dtype=complex)
    n3 = np.array([1, 0, 1], dtype=complex)
    I1, I2, I3 = (complex_involution(n) for n in (n1, n2, n3))
    S = GroupElement(I2.matrix @ I3.matrix, "S")
    T = GroupElement(I2.matrix @ I1.matrix, "T")
    for m in (I1, I2, I3, S, T):
        if not is_h_unitary(m.matrix, 1e-10):
            raise AssertionError("generator fails to preserve the form")
    return TriangleGroup(theta, n1, n2, n3, I1, I2, I3, S, T, abs(theta - PI3) < PARABOLIC_CUTOFF)


def evaluate(g: TriangleGroup, word: str) -> GroupElement:
    """Left-to-right product of letter matrices; accepts letter strings or exponent notation."""
    if any(c not in "SsTt" for c in word):
        word = parse_word(word)
    m = np.eye(3, dtype=complex)
    cache = {c: g.letter(c) for c in set(word)}
    for c in word:
        m = m @ cache[c]
    return GroupElement(m, reduce_word(word))


def tau_conjugate(m):
    """Conjugate a matrix by the antiholomorphic involution (z1, z2, z3) -> (z1*, -z2*, z3*)."""
    mat = m.matrix if isinstance(m, GroupElement) else np.asarray(m, dtype=complex)
    return GroupElement(D_TAU @ mat.conj() @ D_TAU)


def tau_point(p):
    """Action of the same involution on boundary points: [z, t] -> [-conj(z), -t]."""
    if isinstance(p, Infinity):
        return INF
    return HeisenbergPoint(-np.conj(p.z), -p.t)


def i2_conjugate(g: TriangleGroup, m):
    mat = m.matrix if isinstance(m, GroupElement) else np.asarray(m, dtype=complex)
    return GroupElement(g.I2.matrix @ mat @ g.I2.matrix)


def eisenstein_residual(x: complex) -> float:
    """Distance from ``x`` to the nearest point of the lattice Z + Z*omega."""
    # x = a + b omega with omega = (-1 + i sqrt3)/2
    b = x.imag / (np.sqrt(3) / 2)
    a = x.real + b / 2
    best = np.inf
    for da in (np.floor(a), np.ceil(a)):
        for db in (np.floor(b), np.ceil(b)):
            lat = da + db * complex(-0.5, np.sqrt(3) / 2)
            best = min(best, abs(x - lat))
    return float(best)
