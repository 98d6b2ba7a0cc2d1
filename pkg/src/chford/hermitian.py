"""Hermitian linear algebra on C^3 for the complex hyperbolic plane.

Two forms are used throughout: the Siegel form ``H`` (anti-diagonal) and the
ball-model form ``J = diag(1, 1, -1)``.  The Cayley transform ``C`` satisfies
``C^* H C = J``.

>>> import numpy as np
>>> hermitian_product(np.array([1, 0, 1]), np.array([1, 0, 1]))
(2+0j)
"""
from __future__ import annotations

import numpy as np

H = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)
J = np.diag([1, 1, -1]).astype(complex)

_R2 = np.sqrt(2.0)
CAYLEY = np.array([[1, 0, 1], [0, _R2, 0], [1, 0, -1]], dtype=complex) / _R2
CAYLEY_INV = np.linalg.inv(CAYLEY)

OMEGA = complex(-0.5, np.sqrt(3) / 2)
CUBE_ROOTS = (1.0 + 0j, OMEGA, OMEGA.conjugate())


class DomainError(ValueError):
    """Raised when an input violates a geometric precondition."""


def hermitian_product(z, w, form=H):
    """<z, w> = w^* form z.  Broadcasts over leading axes of ``z`` and ``w``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.einsum("...i,ij,...j->...", w.conj(), form, z)


def cayley_transform(p, direction="toBall"):
    """Apply C (``toBall``) or its inverse (``toSiegel``) to a vector."""
    p = np.asarray(p, dtype=complex)
    if direction == "toBall":
        return p @ CAYLEY.T
    if direction == "toSiegel":
        return p @ CAYLEY_INV.T
    raise ValueError(f"unknown direction {direction!r}")


def bergman_distance(u, v) -> float:
    """Distance between two negative vectors, from cosh^2(d/2) = <u,v><v,u>/(<u,u><v,v>)."""
    uu = hermitian_product(u, u).real
    vv = hermitian_product(v, v).real
    if uu >= 0 or vv >= 0:
        raise DomainError("Bergman distance needs negative vectors")
    uv = hermitian_product(u, v)
    c2 = (abs(uv) ** 2) / (uu * vv)
    return float(2.0 * np.arccosh(np.sqrt(max(c2, 1.0))))


def su_normalize(m):
    """Scale a matrix to determinant 1, using the cube root with arg in (-pi/3, pi/3]."""
    m = np.asarray(m, dtype=complex)
    det = np.linalg.det(m)
    if abs(det) == 0:
        raise DomainError("singular matrix")
    r = abs(det) ** (1 / 3)
    arg = np.angle(det) / 3  # in (-pi/3, pi/3]
    return m / (r * np.exp(1j * arg))


def is_h_unitary(m, tol=1e-10) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(m.conj().T @ H @ m - H)) <= tol)


def projective_residual(a, b) -> float:
    """Smallest max-entry deviation |a - lam b| over admissible scalars lam.

    Matrices are SU-normalized first and lam ranges over the cube roots of
    unity.  Vectors are compared with the least-squares optimal complex lam
    after scaling both to unit norm.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if not np.any(a) or not np.any(b):
        raise DomainError("zero input")
    if a.ndim == 2:
        a, b = su_normalize(a), su_normalize(b)
        return float(min(np.max(np.abs(a - lam * b)) for lam in CUBE_ROOTS))
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    lam = np.vdot(b, a)  # minimizes |a - lam b|
    return float(np.max(np.abs(a - lam * b)))


def projective_equal(a, b, tol=1e-9):
    """Return ``(equal, residual)`` for projective comparison of vectors or matrices."""
    res = projective_residual(a, b)
    return res <= tol, res
