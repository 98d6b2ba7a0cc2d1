"""The boundary N ∪ {q_inf} of the Siegel domain.

Points of the Heisenberg group are written ``[z, t]``; interior points carry a
height ``u > 0``.  Lifts to C^3 follow the standard normalization with third
coordinate 1, and the Cygan gauge is ``|2<p, q>|^(1/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian import DomainError, H, hermitian_product


@dataclass(frozen=True)
class Infinity:
    def __repr__(self):
        return "q_inf"


INF = Infinity()


@dataclass(frozen=True)
class HeisenbergPoint:
    z: complex
    t: float

    def __iter__(self):
        return iter((self.z, self.t))

    def as_tuple(self):
        return (self.z.real, self.z.imag, self.t)


@dataclass(frozen=True)
class HorosphericalPoint:
    z: complex
    t: float
    u: float = 0.0

    def __post_init__(self):
        if self.u < 0:
            raise DomainError("height must be non-negative")


def heisenberg_product(a: HeisenbergPoint, b: HeisenbergPoint) -> HeisenbergPoint:
    z = a.z + b.z
    t = a.t + b.t - 2 * (np.conj(a.z) * b.z).imag
    return HeisenbergPoint(complex(z), float(t))


def heisenberg_inverse(a: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(-a.z, -a.t)


def lift_array(z, t, u=0.0):
    """Vectorized standard lifts; returns an array of shape ``z.shape + (3,)``."""
    z = np.asarray(z, dtype=complex)
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    z, t, u = np.broadcast_arrays(z, t, u)
    out = np.empty(z.shape + (3,), dtype=complex)
    out[..., 0] = (-np.abs(z) ** 2 - u + 1j * t) / 2
    out[..., 1] = z
    out[..., 2] = 1.0
    return out


def standard_lift(p):
    if isinstance(p, Infinity):
        return np.array([1, 0, 0], dtype=complex)
    u = getattr(p, "u", 0.0)
    return lift_array(p.z, p.t, u)


def coords_from_lifts(v):
    """Vectorized inverse of :func:`lift_array`: returns ``(z, t, u)`` arrays.

    Vectors whose third coordinate vanishes give NaN.
    """
    v = np.asarray(v, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = v / v[..., 2:3]
    z = w[..., 1]
    t = 2 * w[..., 0].imag
    u = np.maximum(-2 * w[..., 0].real - np.abs(z) ** 2, 0.0)
    return z, t, u


def from_lift(v, tol=1e-10):
    """Read a boundary or horospherical point off a null or negative vector."""
    v = np.asarray(v, dtype=complex)
    scale = np.max(np.abs(v))
    if scale == 0:
        raise DomainError("zero vector")
    v = v / scale
    norm = hermitian_product(v, v).real
    if norm > tol:
        raise DomainError("positive vector has no point in the closed domain")
    if abs(v[2]) < tol:
        return INF
    z, t, u = coords_from_lifts(v)
    z, t, u = complex(z), float(t), float(u)
    if norm > -tol:
        return HeisenbergPoint(z, t)
    return HorosphericalPoint(z, t, u)


def _zt_u(p):
    if isinstance(p, Infinity):
        raise DomainError("Cygan distance is not defined at infinity")
    return p.z, p.t, getattr(p, "u", 0.0)


def cygan_distance(p, q) -> float:
    z, t, u = _zt_u(p)
    w, s, v = _zt_u(q)
    return float(np.sqrt(abs(2 * hermitian_product(lift_array(z, t, u), lift_array(w, s, v)))))


def cygan_coordinate_formula(p, q) -> float:
    """Explicit coordinate expression of the gauge between a point and a boundary point."""
    z, t, u = _zt_u(p)
    w, s, v = _zt_u(q)
    val = abs(z - w) ** 2 + abs(u - v) - 1j * (t - s + 2 * (z * np.conj(w)).imag)
    return float(np.sqrt(abs(val)))


def sample_ccircle(z0: complex, n: int, t_range=(-2.0, 2.0)):
    """Points on the vertical chain through ``[z0, *]``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [HeisenbergPoint(complex(z0), float(t)) for t in np.linspace(*t_range, n)]


def sample_rcircle(kind: str, n: int = 50, x_range=(-1.0, 1.0), xs=None):
    """Points on an infinite R-circle.

    ``kind='x-axis'`` gives ``[x, 0]``; ``kind='L'`` gives the T-invariant
    line ``[x + i*sqrt(3)/2, sqrt(3) x]`` of the parabolic group.
    """
    if xs is None:
        if n < 2:
            raise ValueError("n must be at least 2")
        xs = np.linspace(*x_range, n)
    xs = np.asarray(xs, dtype=float)
    if kind == "x-axis":
        return [HeisenbergPoint(complex(x), 0.0) for x in xs]
    if kind == "L":
        r3 = np.sqrt(3.0)
        return [HeisenbergPoint(complex(x, r3 / 2), float(r3 * x)) for x in xs]
    raise ValueError(f"unknown R-circle {kind!r}")


def write_points_csv(path, points):
    """Write Heisenberg points as ``x,y,t`` rows."""
    import csv

    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["x", "y", "t"])
        for p in points:
            wr.writerow([repr(float(p.z.real)), repr(float(p.z.imag)), repr(float(p.t))])
