"""Checks on the Ford domain of the triangle group.

The Ford domain is the set of points outside every isometric sphere of the
group.  Only the four sphere families with ``|k| <= K`` are kept; their
centers drift linearly in ``k``, so a small window already decides membership
near the fundamental slab of ``T``.

Each check returns :class:`Claim` records gathered into a :class:`FordReport`.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import least_squares, minimize

from .hermitian import DomainError, hermitian_product, projective_equal
from .heisenberg import (
    HeisenbergPoint,
    HorosphericalPoint,
    Infinity,
    coords_from_lifts,
    lift_array,
    standard_lift,
)
from .isometry import classify, fixed_boundary_point
from .spheres import (
    FAMILIES,
    SphereId,
    boundary_lift,
    f_eval,
    geographic_lift,
    giraud_trace,
    side_of,
    side_of_lifts,
    sphere_lift,
    sphere_of,
    window_ids,
)
from .triangle import PI3, build, conjugate_word, evaluate

# which spheres may meet a given k = 0 sphere; every other sphere in the
# window has the k = 0 sphere in its exterior
NEIGHBORS = {
    "plus": {("minus", 0), ("minus", -1), ("star", 0), ("star", -1), ("diamond", 0), ("diamond", 1)},
    "minus": {("plus", 0), ("plus", 1), ("star", 0), ("star", 1), ("diamond", 0), ("diamond", 1)},
    "star": {("plus", 0), ("minus", 0), ("plus", 1), ("minus", -1), ("diamond", 0), ("diamond", 1)},
    "diamond": {("plus", 0), ("minus", 0), ("plus", -1), ("minus", -1), ("star", 0), ("star", -1)},
}

# (a, b, c): the Giraud disk a ∩ b lies inside c; at pi/3 it touches c at the
# fixed point of the listed parabolic word
CONTAINMENTS = [
    (("plus", 0), ("star", -1), ("minus", -1), "SST"),
    (("plus", 0), ("diamond", 1), ("minus", 0), "sTs"),
    (("minus", 0), ("diamond", 0), ("plus", 0), "StS"),
    (("minus", 0), ("star", 1), ("plus", 1), "SSt"),
    (("star", 0), ("diamond", 0), ("plus", 0), None),
    (("star", 0), ("diamond", 1), ("minus", 0), None),
]

# pairs that are disjoint inside the ball but touch at infinity-adjacent
# parabolic points when theta = pi/3
TANGENT_PAIRS = {
    (("star", 0), ("star", 1)): "SSt",
    (("star", 0), ("star", -1)): "tSS",
    (("diamond", 0), ("diamond", 1)): "StS",
    (("diamond", 0), ("diamond", -1)): "tStST",
}

CONTAIN_TOL = 1e-7
TANGENT_RESIDUAL = 1e-6
TANGENT_LOCATION = 1e-8


@dataclass
class Claim:
    id: str
    kind: str
    status: bool
    margin: float = float("nan")
    witness: dict | None = None
    detail: dict = field(default_factory=dict)


@dataclass
class FordReport:
    theta: float
    K: int
    claims: list = field(default_factory=list)

    def add(self, claim: Claim):
        self.claims.append(claim)
        return claim

    def extend(self, other: "FordReport"):
        self.claims.extend(other.claims)
        return self

    @property
    def ok(self) -> bool:
        return all(c.status for c in self.claims)

    def failures(self):
        return [c for c in self.claims if not c.status]

    def summary(self):
        kinds = sorted({c.kind for c in self.claims})
        return {
            "total": len(self.claims),
            "passed": sum(c.status for c in self.claims),
            "all_pass": self.ok,
            "by_kind": {k: all(c.status for c in self.claims if c.kind == k) for k in kinds},
        }

    def to_dict(self):
        claims = sorted(self.claims, key=lambda c: c.id)
        return {
            "theta": self.theta,
            "K": self.K,
            "claims": [_claim_json(c) for c in claims],
            "summary": self.summary(),
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _jsonable(x):
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if np.isfinite(x) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _claim_json(c: Claim):
    d = asdict(c)
    return _jsonable(d)


def witness_of(lift) -> dict:
    z, t, u = coords_from_lifts(np.asarray(lift, complex))
    return {"x": float(np.real(z)), "y": float(np.imag(z)), "t": float(t), "u": float(u)}


def _point_witness(p) -> dict:
    return witness_of(standard_lift(p))


def _sid(x):
    return SphereId(*x)


def _name(x):
    return str(_sid(x))


# --------------------------------------------------------------------------
# membership


def _window_spheres(theta, K, exclude=()):
    ex = {_sid(e) for e in exclude}
    return [sphere_of(s, theta) for s in window_ids(K) if s not in ex]


def ford_margin_lifts(lifts, theta: float, K: int = 5, exclude=(), return_index=False):
    """Vectorized minimum of side margins over the window, optionally skipping some spheres."""
    if K < 2:
        raise DomainError("window K must be at least 2")
    spheres = _window_spheres(theta, K, exclude)
    lifts = np.asarray(lifts, complex)
    vals = np.stack([side_of_lifts(lifts, s) for s in spheres])
    m = vals.min(axis=0)
    if return_index:
        return m, [spheres[i].id for i in np.atleast_1d(vals.argmin(axis=0))]
    return m


def ford_margin(p, theta: float, K: int = 5) -> float:
    """Smallest signed margin of ``p`` over every sphere with ``|k| <= K``."""
    if K < 2:
        raise DomainError("window K must be at least 2")
    if isinstance(p, Infinity):
        raise DomainError("margin is not defined at infinity")
    return float(ford_margin_lifts(standard_lift(p), theta, K))


# --------------------------------------------------------------------------
# pairwise intersections


def center_distance(a, b, theta):
    sa, sb = sphere_of(a, theta), sphere_of(b, theta)
    d = np.sqrt(abs(2 * hermitian_product(sa.center_lift, sb.center_lift)))
    return float(d), sa.radius + sb.radius


def _canonical_pairs(K):
    """Unordered pairs up to translation by T, with the first member at k = 0."""
    seen, out = set(), []
    for f in FAMILIES:
        for g in FAMILIES:
            for m in range(-K, K + 1):
                if f == g and m == 0:
                    continue
                key = frozenset([(f, 0, g, m), (g, 0, f, -m)])
                if key in seen:
                    continue
                seen.add(key)
                out.append((("%s" % f, 0), (g, m)))
    return out


def _grad_quartic(x, sphere):
    """Value and gradient of d^4 - r^4 on the boundary, in coordinates (x, y, t)."""
    wx, wy, s = sphere.center.z.real, sphere.center.z.imag, sphere.center.t
    a, b = x[0] - wx, x[1] - wy
    rho = a * a + b * b
    tau = x[2] - s + 2 * (x[1] * wx - x[0] * wy)
    val = rho * rho + tau * tau - sphere.radius ** 4
    grad = np.array([4 * rho * a - 4 * tau * wy, 4 * rho * b + 4 * tau * wx, 2 * tau])
    return val, grad


def locate_tangency(spheres, start):
    """Refine a boundary point where the spheres meet non-transversally.

    Two spheres: both equations hold and their normals are parallel.  Three
    spheres ``a, b, c``: all three equations hold and the normals are linearly
    dependent.  Solved in least squares from ``start = (x, y, t)``.
    """

    def res(x):
        vals, grads = zip(*(_grad_quartic(x, s) for s in spheres))
        gs = [g / np.linalg.norm(g) for g in grads]
        if len(spheres) == 2:
            extra = list(np.cross(gs[0], gs[1]))
        else:
            extra = [np.linalg.det(np.array(gs))]
        return np.array(list(vals) + extra)

    sol = least_squares(res, np.asarray(start, float), xtol=1e-15, ftol=1e-15, gtol=1e-15, method="lm")
    return sol.x, float(np.max(np.abs(res(sol.x))))


def _boundary_grid_min(base, other, n=400):
    """Minimum of ``side_of(other)`` along the ideal boundary of ``base``."""
    al = np.linspace(-np.pi / 2, np.pi / 2, n)
    ph = np.linspace(0, 2 * np.pi, 2 * n, endpoint=False)
    A, P = np.meshgrid(al, ph, indexing="ij")
    lifts = boundary_lift(base, A, P)
    m = side_of_lifts(lifts, other)
    i = np.unravel_index(np.argmin(m), m.shape)
    return float(m[i]), lifts[i]


def _xyz(lift):
    w = witness_of(lift)
    return np.array([w["x"], w["y"], w["t"]])


def _check_tangent_pair(a, b, theta, word, report):
    sa, sb = sphere_of(a, theta), sphere_of(b, theta)
    g = build(theta)
    mn, lift = _boundary_grid_min(sa, sb)
    x, res = locate_tangency([sa, sb], _xyz(lift))
    pred = fixed_boundary_point(evaluate(g, word))
    px = np.array([pred.z.real, pred.z.imag, pred.t])
    err = float(np.max(np.abs(x - px)))
    ok = mn > -TANGENT_RESIDUAL and res < TANGENT_RESIDUAL and err < TANGENT_LOCATION
    report.add(
        Claim(
            f"tangent:{_name(a)}|{_name(b)}",
            "tangency",
            bool(ok),
            mn,
            {"x": x[0], "y": x[1], "t": x[2], "u": 0.0},
            {"word": word, "location_error": err, "system_residual": res},
        )
    )


def _trace_enough(a, b, theta, grid, min_samples, max_grid=2880):
    tr = giraud_trace(a, b, theta, grid=grid)
    while 0 < len(tr) < min_samples and grid < max_grid:
        grid *= 2
        tr = giraud_trace(a, b, theta, grid=grid)
    return tr, grid


def _check_containment(a, b, c, word, theta, grid, min_samples, report):
    tr, used = _trace_enough(a, b, theta, grid, min_samples)
    sc = sphere_of(c, theta)
    cid = f"contain:{_name(a)}&{_name(b)}<{_name(c)}"
    if tr.empty:
        detail = {"samples": 0, "empty": True}
        ok = True
        if tr.min_margin < 1e-3:
            # near contact: the sampled closest point must still sit inside c
            al, be, w = tr.argmin
            lift = sphere_lift(sphere_of(a, theta), al, be, w, check=False)
            mc = float(side_of_lifts(lift, sc))
            detail["near_contact_margin"] = mc
            ok = mc <= CONTAIN_TOL
        report.add(Claim(cid, "containment", ok, tr.min_margin, None, detail))
        return
    m = side_of_lifts(tr.lifts, sc)
    bad = m > CONTAIN_TOL
    enough = len(tr) >= min_samples
    i = int(np.argmax(m))
    wit = witness_of(tr.lifts[i])
    ok = (not bad.any()) and enough
    report.add(
        Claim(
            cid,
            "containment",
            bool(ok),
            float(-m.max()),
            wit,
            {"samples": len(tr), "violations": int(bad.sum()), "grid": used,
             "max_trace_residual": float(np.abs(tr.residual).max())},
        )
    )
    if word and abs(theta - PI3) < 1e-12:
        # the Giraud disk touches c at a single ideal point; locate it and compare
        g = build(theta)
        pred = fixed_boundary_point(evaluate(g, word))
        x, res = locate_tangency([sphere_of(a, theta), sphere_of(b, theta), sc], _xyz(tr.lifts[i]))
        px = np.array([pred.z.real, pred.z.imag, pred.t])
        err = float(np.max(np.abs(x - px)))
        report.add(
            Claim(
                f"tangent:{_name(a)}&{_name(b)}|{_name(c)}",
                "tangency",
                bool(err < TANGENT_LOCATION and res < TANGENT_RESIDUAL and m.max() <= CONTAIN_TOL),
                float(m.max()),
                {"x": x[0], "y": x[1], "t": x[2], "u": 0.0},
                {"word": word, "location_error": err, "system_residual": res},
            )
        )


def verify_pairwise(theta: float, K: int = 5, grid: int = 720, min_samples: int = 10_000,
                    sample_grid: int = 256) -> FordReport:
    """Check every pair of spheres in the window against the intersection pattern.

    Non-neighbouring pairs must be disjoint with the base sphere outside the
    other one, decided first by Cygan distance between centers and otherwise
    by the minimum margin over a sampled base sphere.  Containment clauses are
    checked on traced Giraud disks.  At theta = pi/3 tangencies are located
    numerically and matched with parabolic fixed points.
    """
    if not 0 <= theta <= PI3 + 1e-12:
        raise DomainError("theta must lie in [0, pi/3]")
    rep = FordReport(theta, K)
    parabolic = abs(theta - PI3) < 1e-12
    for a, b in _canonical_pairs(K):
        fam = a[0]
        pid = f"{_name(a)}|{_name(b)}"
        if b in NEIGHBORS[fam]:
            tr = giraud_trace(a, b, theta, grid=sample_grid)
            rep.add(Claim("meet:" + pid, "neighbor", True, tr.min_margin, None, {"samples": len(tr)}))
            continue
        d, rsum = center_distance(a, b, theta)
        if d > rsum + 1e-12:
            rep.add(Claim("disjoint:" + pid, "disjoint", True, d - rsum, None, {"method": "center-distance", "distance": d}))
        else:
            mn_ab = giraud_trace(a, b, theta, grid=sample_grid, iters=0).min_margin
            mn_ba = giraud_trace(b, a, theta, grid=sample_grid, iters=0).min_margin
            mn = min(mn_ab, mn_ba)
            tangent = parabolic and (a, b) in TANGENT_PAIRS
            ok = mn > 0 or (tangent and mn > -TANGENT_RESIDUAL)
            wit = None
            if not ok:
                al, be, w = giraud_trace(a, b, theta, grid=sample_grid, iters=0).argmin
                wit = witness_of(sphere_lift(sphere_of(a, theta), al, be, w, check=False))
            rep.add(Claim("disjoint:" + pid, "disjoint", bool(ok), mn, wit,
                          {"method": "sampling", "distance": d, "radius_sum": rsum}))
        if parabolic and (a, b) in TANGENT_PAIRS:
            _check_tangent_pair(a, b, theta, TANGENT_PAIRS[(a, b)], rep)
    for a, b, c, word in CONTAINMENTS:
        _check_containment(a, b, c, word, theta, grid, min_samples, rep)
    return rep


# --------------------------------------------------------------------------
# the triple intersection I_0^+ ∩ I_0^* ∩ I_-1^-


def _fpair(theta, x):
    al, be, s = x[0], x[1], x[2]
    w = s * np.sqrt(max(np.cos(al), 0.0))
    return f_eval("star0", theta, al, be, w), f_eval("minusMinus1", theta, al, be, w)


def triple_min(theta: float, n: int = 160, ns: int = 61, starts: int = 12):
    """Minimize max(|f_star0|, |f_minus-1|) over the geographic domain of I_0^+.

    Coordinates are ``(alpha, beta, s)`` with ``w = s sqrt(cos alpha)``; the
    nonsmooth objective is rewritten as an epigraph problem for SLSQP.
    """
    a = np.linspace(-np.pi / 2, np.pi / 2, n)
    b = np.linspace(0, np.pi, n)
    s = np.linspace(-1, 1, ns)
    A, B, S = np.meshgrid(a, b, s, indexing="ij")
    W = S * np.sqrt(np.maximum(np.cos(A), 0))
    F = np.maximum(np.abs(f_eval("star0", theta, A, B, W)), np.abs(f_eval("minusMinus1", theta, A, B, W)))
    best = (float(F.min()), np.array([A.flat[F.argmin()], B.flat[F.argmin()], S.flat[F.argmin()]]))
    bounds = [(-np.pi / 2, np.pi / 2), (-0.5, np.pi + 0.5), (-1, 1), (0, None)]
    for i in np.argsort(F.ravel())[:starts]:
        x0 = np.array([A.flat[i], B.flat[i], S.flat[i], F.flat[i]])
        cons = [
            {"type": "ineq", "fun": (lambda x, j=j, sg=sg: x[3] - sg * _fpair(theta, x)[j])}
            for j in (0, 1)
            for sg in (1.0, -1.0)
        ]
        with np.errstate(all="ignore"):
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                r = minimize(lambda x: x[3], x0, method="SLSQP", bounds=bounds, constraints=cons,
                             options={"ftol": 1e-15, "maxiter": 500})
        x = np.clip(r.x[:3], [b_[0] for b_ in bounds[:3]], [b_[1] for b_ in bounds[:3]])
        val = max(abs(v) for v in _fpair(theta, x))
        if val < best[0]:
            best = (float(val), x)
    val, x = best
    if val < 1e-6:
        # a common zero: polish it as a root of the two functions on the boundary or inside
        sol = least_squares(lambda y: np.array(_fpair(theta, y)), x,
                            bounds=([-np.pi / 2, -0.5, -1], [np.pi / 2, np.pi + 0.5, 1]),
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        y = sol.x
        v2 = max(abs(v) for v in _fpair(theta, y))
        if v2 <= val:
            val, x = float(v2), y
    return val, x


def verify_triple(theta: float) -> FordReport:
    if not 0 <= theta <= PI3 + 1e-12:
        raise DomainError("theta must lie in [0, pi/3]")
    rep = FordReport(theta, 0)
    val, x = triple_min(theta)
    al, be, s = x
    w = s * np.sqrt(max(np.cos(al), 0))
    lift = geographic_lift(al, be, w, np.sqrt(2), check=False)
    wit = witness_of(lift)
    detail = {"alpha": al, "beta": be, "w": w, "min_residual": val}
    if abs(theta - PI3) < 1e-12:
        g = build(theta)
        p2 = fixed_boundary_point(evaluate(g, "tSS"))
        err = max(abs(wit["x"] - p2.z.real), abs(wit["y"] - p2.z.imag), abs(wit["t"] - p2.t))
        detail["distance_to_p2"] = err
        rep.add(Claim("triple:minimizer-is-p2", "triple", bool(err < 1e-6 and val < 1e-9), val, wit, detail))
    else:
        rep.add(Claim("triple:empty", "triple", bool(val > 1e-3), val, wit, detail))
    return rep


# --------------------------------------------------------------------------
# side pairings, cycles and tessellation


def ridge_samples(theta: float, n: int = 100, K: int = 5, grid: int = 240, interior_only=True):
    """Points of the ridge s_0^+ ∩ s_0^-: traced I_0^+ ∩ I_0^- points outside every other sphere."""
    tr = giraud_trace(("plus", 0), ("minus", 0), theta, grid=grid)
    lifts = tr.lifts
    m = ford_margin_lifts(lifts, theta, K, exclude=[("plus", 0), ("minus", 0)])
    keep = m > 1e-9
    if interior_only:
        keep &= np.abs(tr.w) < np.sqrt(np.cos(tr.alpha)) - 1e-3
    idx = np.flatnonzero(keep)
    if len(idx) > n:
        idx = idx[np.linspace(0, len(idx) - 1, n).astype(int)]
    return lifts[idx]


def _sample_sphere(sphere, n, rng):
    al = rng.uniform(-np.pi / 2, np.pi / 2, n)
    be = rng.uniform(0, np.pi, n)
    w = rng.uniform(-1, 1, n) * np.sqrt(np.cos(al))
    return sphere_lift(sphere, al, be, w, check=False)


def side_pairing_table(theta: float, K: int = 5, n: int = 100, seed: int = 0) -> tuple[list, FordReport]:
    g = build(theta)
    rng = np.random.default_rng(seed)
    table = []
    for k in range(-K, K + 1):
        table.append((SphereId("plus", k), conjugate_word("S", k), SphereId("minus", k)))
        table.append((SphereId("star", k), conjugate_word("SS", k), SphereId("star", k)))
        table.append((SphereId("diamond", k), conjugate_word("tStS", k), SphereId("diamond", k)))
    rep = FordReport(theta, K)
    # each pairing maps its sphere onto the image sphere and exterior to interior
    for k in (-2, 0, 2):
        for src, word, dst in table:
            if src.k != k:
                continue
            e = evaluate(g, word)
            ss, sd = sphere_of(src, theta), sphere_of(dst, theta)
            pts = _sample_sphere(ss, n, rng)
            on = np.abs(side_of_lifts(e.act(pts), sd))
            outside = sphere_lift(ss, rng.uniform(-1.5, 1.5, n), rng.uniform(0, np.pi, n), 0.0, check=False)
            # push sampled points radially outward by scaling the Cygan radius
            big = geographic_lift(rng.uniform(-1.4, 1.4, n), rng.uniform(0, np.pi, n), 0.3,
                                  ss.radius * 1.5, ss.center, check=False)
            inside = side_of_lifts(e.act(big), sd)
            ok = on.max() < 1e-9 and np.all(inside < 0)
            rep.add(Claim(f"pairing:{src}->{dst}", "pairing", bool(ok), float(-on.max()), None,
                          {"word": word, "max_image_residual": float(on.max()),
                           "max_exterior_image_margin": float(inside.max())}))
    # S carries the ridge s0+ ∩ s0- onto the ridge s0- ∩ s0*
    S = g.S
    ridge = ridge_samples(theta, n, K)
    img = S.act(ridge)
    m_minus = np.abs(side_of_lifts(img, sphere_of(("minus", 0), theta)))
    m_star = np.abs(side_of_lifts(img, sphere_of(("star", 0), theta)))
    m_rest = ford_margin_lifts(img, theta, K, exclude=[("minus", 0), ("star", 0)])
    ok = len(ridge) >= n and m_minus.max() < 1e-9 and m_star.max() < 1e-9 and m_rest.min() > -1e-9
    rep.add(Claim("pairing:ridge:S(s0+&s0-)=s0-&s0*", "pairing", bool(ok), float(m_rest.min()),
                  None if ok else witness_of(ridge[int(np.argmin(m_rest))]),
                  {"samples": len(ridge), "on_minus": float(m_minus.max()), "on_star": float(m_star.max())}))
    # the explicit ridge point on the curve where f_star0 = 1 - cos(alpha)
    q = geographic_lift(np.pi / 3, np.pi / 6 + theta, np.sqrt(2) / 2, np.sqrt(2))
    sq = S.act(q)
    vals = [side_of_lifts(q, sphere_of(("plus", 0), theta)), side_of_lifts(q, sphere_of(("minus", 0), theta)),
            side_of_lifts(sq, sphere_of(("minus", 0), theta)), side_of_lifts(sq, sphere_of(("star", 0), theta)),
            side_of_lifts(sq, sphere_of(("plus", 0), theta))]
    ok = max(abs(v) for v in vals[:4]) < 1e-9 and vals[4] > 0
    rep.add(Claim("pairing:ridge-point", "pairing", bool(ok), float(vals[4]), witness_of(sq),
                  {"residuals": [float(v) for v in vals]}))
    # S^2 and (T^-1 S)^2 preserve their spheres
    for fam, word in (("star", "SS"), ("diamond", "tStS")):
        sp = sphere_of((fam, 0), theta)
        pts = _sample_sphere(sp, n, rng)
        r = np.abs(side_of_lifts(evaluate(g, word).act(pts), sp)).max()
        rep.add(Claim(f"pairing:self:{fam}0", "pairing", bool(r < 1e-9), float(-r), None, {"word": word}))
    # equivariance: the k = 2 pairing is the k = 0 one conjugated by T^2
    lhs = evaluate(g, conjugate_word("S", 2)).matrix
    t2 = evaluate(g, "TT").matrix
    rhs = t2 @ g.S.matrix @ np.linalg.inv(t2)
    eq, res = projective_equal(lhs, rhs)
    rep.add(Claim("pairing:equivariance:k=2", "pairing", bool(eq), -res))
    return table, rep


def cycle_check(theta: float, K: int = 5, n: int = 100, eps: float = 1e-4, seed: int = 0) -> FordReport:
    g = build(theta)
    rep = FordReport(theta, K)
    for k in range(-2, 3):
        for base in ("SSSS", "tStStStS"):
            w = conjugate_word(base, k)
            eq, res = projective_equal(evaluate(g, w).matrix, np.eye(3))
            rep.add(Claim(f"cycle:{base}@k={k}", "cycle", bool(eq), -res, None, {"word": w}))
    # three copies of D around the ridge s0+ ∩ s0-
    ridge = ridge_samples(theta, n, K)
    qinf = np.array([1, 0, 0], complex)
    cands = [qinf, np.linalg.inv(g.S.matrix) @ qinf, g.S.matrix @ qinf]

    def quantities(lifts):
        v = lifts / lifts[..., 2:3]
        return np.stack([np.abs(hermitian_product(v, c)) for c in cands], axis=-1)

    qr = quantities(ridge)
    spread = float((qr.max(axis=1) - qr.min(axis=1)).max()) if len(ridge) else np.inf
    rng = np.random.default_rng(seed)
    z, t, u = coords_from_lifts(ridge)
    covered = 0
    min_gap = np.inf
    for i in range(len(ridge)):
        d = rng.normal(size=(64, 4))
        d /= np.linalg.norm(d, axis=1)[:, None]
        pts = lift_array(z[i] + eps * (d[:, 0] + 1j * d[:, 1]), t[i] + eps * d[:, 2], np.abs(u[i] + eps * d[:, 3]))
        q = np.sort(quantities(pts), axis=1)
        labels = set(np.argmin(quantities(pts), axis=1).tolist())
        covered += labels == {0, 1, 2}
        min_gap = min(min_gap, float((q[:, 1] - q[:, 0]).min()))
    ok = len(ridge) >= n and spread < 1e-8 and covered == len(ridge) and min_gap > 0
    rep.add(Claim("tessellation:s0+&s0-", "tessellation", bool(ok), float(-spread), None,
                  {"samples": len(ridge), "three_copies": covered, "min_gap_off_ridge": min_gap,
                   "equality_spread_on_ridge": spread}))
    return rep


def horoball_consistency(theta: float = PI3) -> FordReport:
    if abs(theta - PI3) > 1e-12:
        raise DomainError("the cusp cycle check needs theta = pi/3")
    g = build(theta)
    rep = FordReport(theta, 0)
    # S·S·S^-2 as an unreduced product
    m = g.S.matrix @ g.S.matrix @ np.linalg.inv(g.S.matrix @ g.S.matrix)
    eq, res = projective_equal(m, np.eye(3))
    rep.add(Claim("horoball:S.S.S^-2", "horoball", bool(eq), -res))
    lhs = evaluate(g, "tST").matrix @ np.linalg.matrix_power(np.linalg.inv(evaluate(g, "sT").matrix), 2) @ g.S.matrix
    cusp = evaluate(g, "tSStSS")
    eq, res = projective_equal(lhs, cusp.matrix)
    rep.add(Claim("horoball:cycle-word=(T^-1S^2)^2", "horoball", bool(eq), -res))
    tr = cusp.trace()
    cls = classify(cusp)
    ok = abs(tr - 3) < 1e-9 and cls.kind == "parabolic" and not cusp.is_identity()
    rep.add(Claim("horoball:(T^-1S^2)^2-parabolic", "horoball", bool(ok), -abs(tr - 3), None,
                  {"trace": [tr.real, tr.imag], "class": str(cls)}))
    i1323 = g.I1.matrix @ g.I3.matrix @ g.I2.matrix @ g.I3.matrix
    eq, res = projective_equal(cusp.matrix, i1323 @ i1323)
    rep.add(Claim("horoball:(T^-1S^2)^2=(I1I3I2I3)^2", "horoball", bool(eq), -res))
    p2 = fixed_boundary_point(evaluate(g, "tSS"))
    img = cusp.apply(p2)
    err = max(abs(img.z - p2.z), abs(img.t - p2.t))
    rep.add(Claim("horoball:p2-fixed", "horoball", bool(err < 1e-9), -err, _point_witness(p2)))
    return rep


def verify_all(theta: float, K: int = 5, grid: int = 720, seed: int = 0) -> FordReport:
    rep = FordReport(theta, K)
    rep.extend(verify_pairwise(theta, K, grid))
    rep.extend(verify_triple(theta))
    rep.extend(side_pairing_table(theta, K, seed=seed)[1])
    rep.extend(cycle_check(theta, K, seed=seed))
    if abs(theta - PI3) < 1e-12:
        rep.extend(horoball_consistency(theta))
    return rep
