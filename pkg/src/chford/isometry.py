"""Holomorphic isometries of the complex hyperbolic plane as SU(2,1) matrices.

Classification follows the trace: for real trace, ``-1 <= tr < 3`` is
elliptic, ``tr = 3`` is unipotent (or the identity) and ``tr > 3`` is
loxodromic.  Other traces go through the eigenvalues of the 3x3 matrix, which
are obtained from the characteristic cubic in closed form.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .hermitian import (
    CUBE_ROOTS,
    DomainError,
    H,
    hermitian_product,
    is_h_unitary,
    projective_equal,
    su_normalize,
)
from .heisenberg import INF, from_lift, lift_array

TRACE_TOL = 1e-9


@dataclass(frozen=True)
class GroupElement:
    """An SU(2,1) matrix together with an optional word in S, T and their inverses.

    Words are strings over ``S s T t`` where lower case means inverse.
    """

    matrix: np.ndarray = field(repr=False)
    word: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrix", su_normalize(self.matrix))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix, _reduce(self.word + other.word))

    def inv(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.matrix), invert_word(self.word))

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def act(self, lifts):
        """Apply to lifts of shape (..., 3)."""
        return np.asarray(lifts, dtype=complex) @ self.matrix.T

    def apply(self, p):
        """Image of a boundary point (or ``INF``)."""
        from .heisenberg import standard_lift

        return from_lift(self.matrix @ standard_lift(p))

    def is_identity(self, tol=1e-9) -> bool:
        return projective_equal(self.matrix, np.eye(3), tol)[0]


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


def _reduce(word: str) -> str:
    out: list[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


reduce_word = _reduce


@dataclass(frozen=True)
class IsometryClass:
    kind: str  # 'loxodromic' | 'parabolic' | 'elliptic' | 'identity'
    unipotent: bool | None = None
    order: int | None = None

    def __str__(self):
        if self.kind == "parabolic":
            return "parabolic (unipotent)" if self.unipotent else "parabolic (ellipto-parabolic)"
        if self.kind == "elliptic":
            return f"elliptic of order {self.order}" if self.order else "elliptic (order unknown)"
        return self.kind


def eigenvalues(m):
    """Roots of det(lam I - m) from the closed-form cubic, polished by Newton steps."""
    m = np.asarray(m, dtype=complex)
    a = -np.trace(m)
    b = 0.5 * (np.trace(m) ** 2 - np.trace(m @ m))
    c = -np.linalg.det(m)
    # depressed cubic y^3 + p y + q with lam = y - a/3
    p = b - a * a / 3
    q = 2 * a ** 3 / 27 - a * b / 3 + c
    disc = cmath.sqrt(q * q / 4 + p ** 3 / 27)
    # pick the larger-modulus branch to avoid cancellation
    u3 = -q / 2 + disc if abs(-q / 2 + disc) >= abs(-q / 2 - disc) else -q / 2 - disc
    roots = []
    if abs(u3) < 1e-300:
        roots = [0j, 0j, 0j]
    else:
        u = u3 ** (1 / 3)
        for k in range(3):
            uk = u * CUBE_ROOTS[k]
            roots.append(uk - p / (3 * uk))
    lam = np.array(roots) - a / 3
    coeffs = np.array([1, a, b, c])
    dcoeffs = np.array([3, 2 * a, b])
    for _ in range(3):
        f = np.polyval(coeffs, lam)
        df = np.polyval(dcoeffs, lam)
        ok = np.abs(df) > 1e-8
        lam = np.where(ok, lam - np.where(ok, f / np.where(ok, df, 1), 0), lam)
    return lam


def _as_matrix(g):
    return g.matrix if isinstance(g, GroupElement) else su_normalize(g)


def _power_order(m, max_order):
    acc = np.eye(3, dtype=complex)
    for n in range(1, max_order + 1):
        acc = acc @ m
        if n >= 2 and projective_equal(acc, np.eye(3), 1e-8)[0]:
            return n
    return None


def classify(g, max_order: int = 12, tol: float = TRACE_TOL) -> IsometryClass:
    m = _as_matrix(g)
    if not is_h_unitary(m, 1e-8):
        raise DomainError("matrix does not preserve the Hermitian form")
    if projective_equal(m, np.eye(3), tol)[0]:
        return IsometryClass("identity")
    # the trace is only defined up to a cube root of unity; rotate toward the real axis
    tr = min((lam * np.trace(m) for lam in CUBE_ROOTS), key=lambda x: abs(x.imag))
    if abs(tr.imag) < tol:
        x = tr.real
        if x > 3 + tol:
            return IsometryClass("loxodromic")
        if abs(x - 3) <= tol:
            return IsometryClass("parabolic", unipotent=True)
        if -1 - tol <= x < 3:
            return IsometryClass("elliptic", order=_power_order(m, max_order))
        # real trace below -1 never occurs for SU(2,1); fall through to eigenvalues
    lam = eigenvalues(m)
    mods = np.abs(lam)
    if np.any(np.abs(mods - 1) > 1e-7):
        return IsometryClass("loxodromic")
    # all eigenvalues unimodular: elliptic iff diagonalizable
    for l in lam:
        mult = int(np.sum(np.abs(lam - l) < 1e-6))
        if mult > 1:
            rank = np.linalg.matrix_rank(m - l * np.eye(3), tol=1e-7)
            if rank > 3 - mult:
                unip = any(abs(l - w) < 1e-6 for w in CUBE_ROOTS) and mult == 3
                return IsometryClass("parabolic", unipotent=unip)
    return IsometryClass("elliptic", order=_power_order(m, max_order))


def complex_involution(n) -> GroupElement:
    """The order-two isometry fixing the complex line polar to ``n``."""
    n = np.asarray(n, dtype=complex)
    nn = hermitian_product(n, n).real
    if nn <= 1e-12:
        raise DomainError("polar vector must be positive")
    m = -np.eye(3) + 2 * np.outer(n, n.conj()) @ H / nn
    return GroupElement(m)


def heisenberg_translation(z: complex, t: float) -> GroupElement:
    """Left translation by ``[z, t]``: fixes q_inf and sends [0,0] to [z, t]."""
    m = np.array(
        [[1, -np.conj(z), (-abs(z) ** 2 + 1j * t) / 2], [0, 1, z], [0, 0, 1]], dtype=complex
    )
    return GroupElement(m)


def _dominant_column(a):
    j = int(np.argmax(np.linalg.norm(a, axis=0)))
    return a[:, j]


def _projector_image(m, lam_keep, lam_kill):
    """Image of prod (m - mu I) over the other eigenvalues: the lam_keep eigenline."""
    a = np.eye(3, dtype=complex)
    for mu in lam_kill:
        a = a @ (m - mu * np.eye(3))
    return _dominant_column(a)


def fixed_boundary_point(g):
    """Boundary fixed point(s) of a parabolic or loxodromic element.

    Returns one point for parabolic input and a pair (repelling, attracting)
    for loxodromic input.  Eigenlines are read off the image of products of
    ``m - mu I``, which stays well conditioned for repeated eigenvalues.
    """
    m = _as_matrix(g)
    cls = classify(m)
    if cls.kind in ("elliptic", "identity"):
        raise DomainError(f"{cls} element has no distinguished boundary fixed point")
    lam = eigenvalues(m)
    if cls.kind == "loxodromic":
        idx = np.argsort(np.abs(lam))
        pts = []
        for i in (idx[0], idx[2]):
            others = [lam[j] for j in range(3) if j != i]
            pts.append(from_lift(_projector_image(m, lam[i], others), tol=1e-7))
        return tuple(pts)
    tr = np.trace(m)
    lam0 = min(CUBE_ROOTS, key=lambda w: abs(tr - 3 * w))
    if abs(tr - 3 * lam0) < 1e-7:
        # unipotent up to a cube root of unity; the triple eigenvalue is lam0
        n = m - lam0 * np.eye(3)
        n2 = n @ n
        v = _dominant_column(n2) if np.max(np.abs(n2)) > 1e-6 else _dominant_column(n)
    else:
        # one simple eigenvalue mu; the Jordan block of the other carries the fixed point
        d = [sum(abs(lam[i] - lam[j]) for j in range(3)) for i in range(3)]
        mu = lam[int(np.argmax(d))]
        rep = lam[[i for i in range(3) if i != int(np.argmax(d))]].mean()
        n = (m - mu * np.eye(3)) @ (m - rep * np.eye(3))
        v = _dominant_column(n)
    return from_lift(v, tol=1e-7)
