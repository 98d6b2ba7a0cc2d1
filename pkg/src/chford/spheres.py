"""Isometric spheres of the triangle group and the tools used to intersect them.

Every isometric sphere is a Cygan sphere.  Points on a sphere of radius ``r``
centered at ``[0, 0]`` are parametrized by geographic coordinates
``(alpha, beta, w)`` with lift::

    q(alpha, beta, w) = (-r^2 e^{-i alpha} / 2,  r w e^{i(-alpha/2 + beta)},  1)

and ``|w| <= sqrt(cos alpha)``; spheres with other centers are reached by a
left Heisenberg translation.  Four families are indexed by ``k``:

========  =====================  ===================================
family    element                center / radius
========  =====================  ===================================
plus      T^k S T^-k             [4k cos t, 8k sin 2t], sqrt 2
minus     T^k S^-1 T^-k          [4k cos t + 2e^{it}, 0], sqrt 2
star      T^k S^2 T^-k           [4k cos t + e^{it}, 4k sin 2t], 1
diamond   T^k (S^-1 T)^2 T^-k    [4k cos t - e^{-it}, 4k sin 2t], 1
========  =====================  ===================================
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .hermitian import DomainError, hermitian_product
from .heisenberg import HeisenbergPoint, Infinity, coords_from_lifts, lift_array, standard_lift
from .isometry import GroupElement, fixed_boundary_point, heisenberg_translation
from .triangle import PI3, TriangleGroup, build, conjugate_word, evaluate

FAMILIES = ("plus", "minus", "star", "diamond")
BASE_WORDS = {"plus": "S", "minus": "s", "star": "SS", "diamond": "sTsT"}


class SphereId(NamedTuple):
    family: str
    k: int

    def __str__(self):
        return f"{self.family}{self.k}"


@dataclass(frozen=True)
class IsometricSphere:
    center: HeisenbergPoint
    radius: float
    word: str = ""
    id: SphereId | None = None

    @property
    def center_lift(self):
        return lift_array(self.center.z, self.center.t)


def isometric_sphere(g: GroupElement, word: str | None = None, sid=None) -> IsometricSphere:
    m = g.matrix
    g31, g32, g33 = m[2, 0], m[2, 1], m[2, 2]
    if abs(g31) < 1e-10:
        raise DomainError("element fixes infinity; it has no isometric sphere")
    z = np.conj(g32) / np.conj(g31)
    t = 2 * (np.conj(g33) / np.conj(g31)).imag
    return IsometricSphere(
        HeisenbergPoint(complex(z), float(t)), float(np.sqrt(2 / abs(g31))), word or g.word, sid
    )


def sphere_center_closed_form(sid: SphereId, theta: float):
    fam, k = sid
    e = np.exp(1j * theta)
    c = 4 * k * np.cos(theta)
    if fam == "plus":
        return HeisenbergPoint(complex(c), 8 * k * np.sin(2 * theta)), np.sqrt(2)
    if fam == "minus":
        return HeisenbergPoint(complex(c + 2 * e), 0.0), np.sqrt(2)
    if fam == "star":
        return HeisenbergPoint(complex(c + e), 4 * k * np.sin(2 * theta)), 1.0
    if fam == "diamond":
        return HeisenbergPoint(complex(c - np.conj(e)), 4 * k * np.sin(2 * theta)), 1.0
    raise ValueError(f"unknown family {fam!r}")


def defining_word(sid: SphereId) -> str:
    return conjugate_word(BASE_WORDS[sid.family], sid.k)


def sphere_of(sid, theta: float) -> IsometricSphere:
    sid = SphereId(*sid)
    center, radius = sphere_center_closed_form(sid, theta)
    return IsometricSphere(center, float(radius), defining_word(sid), sid)


def sphere_from_word(sid, g: TriangleGroup) -> IsometricSphere:
    sid = SphereId(*sid)
    w = defining_word(sid)
    return isometric_sphere(evaluate(g, w), w, sid)


def window_ids(K: int, families=FAMILIES):
    return [SphereId(f, k) for k in range(-K, K + 1) for f in families]


# --------------------------------------------------------------------------
# margins


def side_of_lifts(lifts, sphere: IsometricSphere):
    """Vectorized ``d_Cyg(p, center)^2 - r^2`` for lifts of shape (..., 3)."""
    lifts = np.asarray(lifts, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = lifts / lifts[..., 2:3]
    return np.abs(2 * hermitian_product(v, sphere.center_lift)) - sphere.radius ** 2


def side_of(p, sphere: IsometricSphere) -> float:
    """Signed margin of a point: positive outside, negative inside, zero on the sphere.

    The point at infinity is outside every sphere and gets ``+inf``.
    """
    if isinstance(p, Infinity):
        return float("inf")
    return float(side_of_lifts(standard_lift(p), sphere))


# --------------------------------------------------------------------------
# geographic coordinates


def geographic_lift(alpha, beta, w, r, center: HeisenbergPoint | None = None, check=True):
    alpha, beta, w = np.broadcast_arrays(
        np.asarray(alpha, float), np.asarray(beta, float), np.asarray(w, float)
    )
    if check and np.any(np.abs(w) > np.sqrt(np.maximum(np.cos(alpha), 0)) + 1e-12):
        raise DomainError("|w| exceeds sqrt(cos alpha)")
    q = np.empty(alpha.shape + (3,), dtype=complex)
    q[..., 0] = -(r ** 2) * np.exp(-1j * alpha) / 2
    q[..., 1] = r * w * np.exp(1j * (-alpha / 2 + beta))
    q[..., 2] = 1.0
    if center is not None:
        q = q @ heisenberg_translation(center.z, center.t).matrix.T
    return q


def sphere_lift(sphere: IsometricSphere, alpha, beta, w, check=True):
    return geographic_lift(alpha, beta, w, sphere.radius, sphere.center, check=check)


def boundary_lift(sphere: IsometricSphere, alpha, phi):
    """Ideal boundary of a sphere: w = sqrt(cos alpha), with phi in [0, 2pi) playing beta."""
    alpha = np.asarray(alpha, float)
    w = np.sqrt(np.maximum(np.cos(alpha), 0.0))
    return sphere_lift(sphere, alpha, phi, w, check=False)


def geographic_coords(sphere: IsometricSphere, lifts):
    """Inverse of :func:`sphere_lift` for points on the sphere.

    Returns ``(alpha, beta, w)`` with beta folded into [0, pi).
    """
    tinv = heisenberg_translation(sphere.center.z, sphere.center.t).inv().matrix
    v = np.asarray(lifts, complex) @ tinv.T
    v = v / v[..., 2:3]
    r = sphere.radius
    x = -2 * v[..., 0] / r ** 2  # = e^{-i alpha}
    alpha = -np.angle(x)
    zeta = v[..., 1] / r  # = w e^{i(-alpha/2 + beta)}
    w = np.abs(zeta)
    beta = np.angle(zeta) + alpha / 2
    flip = np.mod(beta, 2 * np.pi) >= np.pi
    beta = np.mod(beta, np.pi)
    w = np.where(flip, -w, w)
    return alpha, beta, w


# --------------------------------------------------------------------------
# the three auxiliary functions on I_0^+


def f_eval(which: str, theta: float, alpha, beta, w):
    a, b, w = np.asarray(alpha, float), np.asarray(beta, float), np.asarray(w, float)
    r2 = np.sqrt(2)
    base = 2 * w ** 2 + 1 + np.cos(a)
    if which == "star0":
        return base - r2 * w * np.cos(-a / 2 + b - theta) - 2 * r2 * w * np.cos(a / 2 + b - theta)
    if which == "minus0":
        return base - r2 * w * np.cos(a / 2 + b - theta) - 2 * r2 * w * np.cos(-a / 2 + b - theta)
    if which == "minusMinus1":
        return base + r2 * w * np.cos(a / 2 + b + theta) + 2 * r2 * w * np.cos(-a / 2 + b + theta)
    raise ValueError(f"unknown function {which!r}")


F_SPHERE = {"star0": SphereId("star", 0), "minus0": SphereId("minus", 0), "minusMinus1": SphereId("minus", -1)}


# --------------------------------------------------------------------------
# Giraud tracing


@dataclass
class GiraudTrace:
    base: SphereId
    other: SphereId
    theta: float
    alpha: np.ndarray
    beta: np.ndarray
    w: np.ndarray
    lifts: np.ndarray = field(repr=False)
    residual: np.ndarray = field(repr=False)
    base_residual: np.ndarray = field(repr=False)
    min_margin: float = np.nan  # min of side_of(other) over the whole base sphere grid
    argmin: tuple = ()

    @property
    def empty(self) -> bool:
        return len(self.w) == 0

    def __len__(self):
        return len(self.w)

    def heisenberg(self):
        z, t, u = coords_from_lifts(self.lifts)
        return z, t, u


def _quadratic_parts(base: IsometricSphere, other: IsometricSphere, alpha, beta):
    """<q(w), c> = A + B w for the base-sphere lift q and other-center lift c."""
    r = base.radius
    tm = heisenberg_translation(base.center.z, base.center.t).matrix
    q0 = np.zeros(alpha.shape + (3,), complex)
    q0[..., 0] = -(r ** 2) * np.exp(-1j * alpha) / 2
    q0[..., 2] = 1
    q1 = np.zeros_like(q0)
    q1[..., 1] = r * np.exp(1j * (-alpha / 2 + beta))
    c = other.center_lift
    A = hermitian_product(q0 @ tm.T, c)
    B = hermitian_product(q1 @ tm.T, c)
    return A, B


def giraud_trace(base, other, theta: float, grid: int = 256, iters: int = 60) -> GiraudTrace:
    """Sample ``base ∩ other`` on the geographic grid of ``base``.

    For every cell center ``(alpha, beta)`` the margin with respect to ``other``
    is a function of ``w`` whose square is a convex quadratic; it is split at
    its vertex into monotone pieces and each sign change is bisected.
    """
    bs = base if isinstance(base, IsometricSphere) else sphere_of(base, theta)
    os_ = other if isinstance(other, IsometricSphere) else sphere_of(other, theta)
    n = int(grid)
    al = -np.pi / 2 + (np.arange(n) + 0.5) * np.pi / n
    be = (np.arange(n) + 0.5) * np.pi / n
    AL, BE = np.meshgrid(al, be, indexing="ij")
    A, B = _quadratic_parts(bs, os_, AL, BE)
    wmax = np.sqrt(np.cos(AL))
    R2 = os_.radius ** 2

    def margin(w):
        return np.abs(2 * (A + B * w)) - R2

    B2 = np.abs(B) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        wv = np.where(B2 > 0, -(A * np.conj(B)).real / B2, 0.0)
    wv = np.clip(wv, -wmax, wmax)
    m_lo, m_hi, m_v = margin(-wmax), margin(wmax), margin(wv)
    stack = np.stack([m_lo, m_hi, m_v])
    min_margin = float(stack.min())
    flat = int(np.argmin(stack.min(axis=0)))
    i, j = np.unravel_index(flat, AL.shape)
    which = int(np.argmin(stack[:, i, j]))
    wbest = (-wmax, wmax, wv)[which][i, j]
    argmin = (float(AL[i, j]), float(BE[i, j]), float(wbest))

    found_a, found_b, found_w = [], [], []
    for lo, hi, mlo, mhi in ((-wmax, wv, m_lo, m_v), (wv, wmax, m_v, m_hi)):
        mask = (np.sign(mlo) != np.sign(mhi)) & (hi > lo)
        if not np.any(mask):
            continue
        a, b = lo[mask].copy(), hi[mask].copy()
        fa = mlo[mask].copy()
        Am, Bm = A[mask], B[mask]
        for _ in range(iters):
            mid = 0.5 * (a + b)
            fm = np.abs(2 * (Am + Bm * mid)) - R2
            left = np.sign(fm) == np.sign(fa)
            a = np.where(left, mid, a)
            fa = np.where(left, fm, fa)
            b = np.where(left, b, mid)
        found_a.append(AL[mask])
        found_b.append(BE[mask])
        found_w.append(0.5 * (a + b))
    if found_w:
        fa_, fb_, fw_ = (np.concatenate(x) for x in (found_a, found_b, found_w))
    else:
        fa_ = fb_ = fw_ = np.zeros(0)
    lifts = sphere_lift(bs, fa_, fb_, fw_, check=False)
    return GiraudTrace(
        bs.id, os_.id, theta, fa_, fb_, fw_, lifts,
        side_of_lifts(lifts, os_), side_of_lifts(lifts, bs), min_margin, argmin,
    )


def sphere_min_margin(base, other, theta: float, grid: int = 256) -> float:
    """Minimum of ``side_of(other)`` over the sampled base sphere (both boundary and interior)."""
    return giraud_trace(base, other, theta, grid=grid, iters=0).min_margin


# --------------------------------------------------------------------------
# the triple intersection I_0^+ ∩ I_0^- ∩ I_0^*


@dataclass
class TripleCurves:
    theta: float
    L1: np.ndarray  # (n, 3) geographic coordinates
    C1: np.ndarray
    C2: np.ndarray
    center: tuple
    endpoints: dict


def triple_curves(theta: float, n: int = 200) -> TripleCurves:
    if not 0 <= theta <= PI3 + 1e-12:
        raise DomainError("theta must lie in [0, pi/3]")
    amax = np.arccos(1 / 3)
    a = np.linspace(-amax, amax, n)
    L1 = np.stack([a, np.full_like(a, theta), np.sqrt(2) / 2 * np.cos(a / 2)], axis=1)
    tmax = np.arccos(2 * np.sqrt(2) / 3)
    t1 = np.linspace(-tmax, tmax, n)
    c1 = np.cos(t1)
    w1 = (3 * c1 - np.sqrt(np.maximum(9 * c1 ** 2 - 8, 0))) / (2 * np.sqrt(2))
    t2 = np.linspace(np.pi - tmax, np.pi + tmax, n)
    c2 = np.cos(t2)
    w2 = (3 * c2 + np.sqrt(np.maximum(9 * c2 ** 2 - 8, 0))) / (2 * np.sqrt(2))
    # fold beta into [0, pi) by flipping the sign of w
    C1 = _fold(np.zeros(n), t1 + theta, w1)
    C2 = _fold(np.zeros(n), t2 + theta, w2)
    ends = {
        "L1-": (-amax, theta, np.sqrt(3) / 3),
        "L1+": (amax, theta, np.sqrt(3) / 3),
        "C+": (0.0, tmax + theta, 1.0),
        "C-": (0.0, np.pi - tmax + theta, -1.0),
    }
    return TripleCurves(theta, L1, C1, C2, (0.0, theta, np.sqrt(2) / 2), ends)


def _fold(alpha, beta, w):
    flip = np.mod(beta, 2 * np.pi) >= np.pi
    beta = np.mod(beta, np.pi)
    return np.stack([alpha, beta, np.where(flip, -w, w)], axis=1)


def triple_endpoint_lifts(theta: float):
    """The four endpoint lifts, written in closed form."""
    e = np.exp(1j * theta)
    r2 = np.sqrt(2)
    return [
        np.array([-(1 / 3 - 2j * r2 / 3), (2 / 3 - 1j * r2 / 3) * e, 1]),
        np.array([-(1 / 3 + 2j * r2 / 3), (2 / 3 + 1j * r2 / 3) * e, 1]),
        np.array([-1, (4 / 3 + 1j * r2 / 3) * e, 1]),
        np.array([-1, (4 / 3 - 1j * r2 / 3) * e, 1]),
    ]


# --------------------------------------------------------------------------
# tangencies at the parabolic parameter


@dataclass(frozen=True)
class Tangency:
    spheres: tuple  # two SphereIds tangent, or (a, b, c): a ∩ b tangent to c
    word: str
    point: HeisenbergPoint


def tangency_points(theta: float = PI3, ks=(-1, 0, 1)):
    if abs(theta - PI3) > 1e-12:
        raise DomainError("tangencies exist only at theta = pi/3")
    g = build(theta)
    P, M, St, Dm = "plus", "minus", "star", "diamond"
    out = []

    def add(ids, base_word, k):
        w = conjugate_word(base_word, k)
        out.append(Tangency(tuple(SphereId(*i) for i in ids), w, fixed_boundary_point(evaluate(g, w))))

    for k in ks:
        add(((St, k), (St, k + 1)), "SSt", k)
        add(((St, k), (St, k - 1)), "tSS", k)
        add(((Dm, k), (Dm, k + 1)), "StS", k)
        add(((Dm, k), (Dm, k - 1)), "tStST", k)
        add(((P, k), (St, k - 1), (M, k - 1)), "SST", k)
        add(((P, k), (Dm, k + 1), (M, k)), "sTs", k)
        add(((M, k), (Dm, k), (P, k)), "StS", k)
        add(((M, k), (St, k + 1), (P, k + 1)), "SSt", k)
    return out
