"""Command-line front end.

Exit codes: 0 all claims pass, 1 some claim fails, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import ford
from .triangle import PI3

THETA_TOKENS = {"0": 0.0, "pi/3": PI3, "pi/4": np.pi / 4, "pi/6": np.pi / 6}
SUITES = ("pairwise", "triple", "pairings", "cycles", "horoballs", "boundary", "all")
EXPORTS = ("spheres", "giraud", "triple-curves", "c0", "complex", "polyhedron", "rcircle", "figure")


class UsageError(Exception):
    pass


def parse_theta(text: str) -> float:
    key = text.strip().lower().replace(" ", "").replace("π", "pi")
    if key in THETA_TOKENS:
        return THETA_TOKENS[key]
    try:
        return float(key)
    except ValueError:
        raise UsageError(f"cannot read theta {text!r}; use a decimal or one of {', '.join(THETA_TOKENS)}")


def parse_k_window(text: str):
    """``"5"`` -> (-5, 5); ``"-1..1"`` -> (-1, 1)."""
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            hi = int(text)
            lo = -hi
    except ValueError:
        raise UsageError(f"cannot read k window {text!r}")
    if lo > hi:
        raise UsageError("empty k window")
    return lo, hi


def _is_pi3(theta):
    return abs(theta - PI3) < 1e-12


def _need_ford_theta(theta):
    if not 0 <= theta <= PI3 + 1e-12:
        raise UsageError("Ford suites need 0 <= theta <= pi/3")


# --------------------------------------------------------------------------


def cmd_classify(args):
    from .isometry import classify
    from .triangle import build, evaluate

    theta = parse_theta(args.theta)
    if not 0 <= theta < np.pi / 2:
        raise UsageError("theta must lie in [0, pi/2)")
    g = build(theta)
    items = [("S", g.S), ("T", g.T),
             ("I1I3I2I3", g.I1 @ g.I3 @ g.I2 @ g.I3),
             ("(T^-1S^2)^2", evaluate(g, "(T^-1S^2)^2"))]
    rows = []
    for name, e in items:
        tr = np.trace(e.matrix)
        rows.append({"element": name, "trace": [float(tr.real), float(tr.imag)], "class": str(classify(e))})
    if args.json_out:
        _write_text(args.json_out, json.dumps({"theta": theta, "elements": rows}, indent=2) + "\n")
    for r in rows:
        re_, im = r["trace"]
        tr = f"{re_:.12g}" if abs(im) < 1e-12 else f"{re_:.12g}{im:+.12g}i"
        print(f"{r['element']:>12}  tr = {tr:<24} {r['class']}")
    return 0


def run_suite(suite, theta, K, grid, seed):
    from . import boundary
    from .presentation import verify_presentation

    if suite in ("horoballs", "boundary") and not _is_pi3(theta):
        raise UsageError(f"suite {suite!r} needs theta = pi/3")
    _need_ford_theta(theta)
    if suite == "pairwise":
        return ford.verify_pairwise(theta, K, grid)
    if suite == "triple":
        return ford.verify_triple(theta)
    if suite == "pairings":
        return ford.side_pairing_table(theta, K, seed=seed)[1]
    if suite == "cycles":
        return ford.cycle_check(theta, K, seed=seed)
    if suite == "horoballs":
        return ford.horoball_consistency(theta)
    if suite == "boundary":
        rep = ford.FordReport(theta, K)
        for f in (boundary.verify_incidences, boundary.verify_plane_sections, boundary.verify_curve_c0,
                  boundary.verify_rcircle, boundary.verify_tube_complex, boundary.verify_polyhedron,
                  boundary.verify_edge_cycles, verify_presentation):
            rep.extend(f())
        return rep
    rep = ford.verify_all(theta, K, grid, seed)
    if _is_pi3(theta):
        rep.extend(run_suite("boundary", theta, K, grid, seed))
    return rep


def cmd_verify(args):
    theta = parse_theta(args.theta)
    lo, hi = parse_k_window(args.k_window)
    K = max(-lo, hi)
    if K < 2:
        raise UsageError("k window must reach at least 2")
    if args.grid < 64:
        raise UsageError("grid must be at least 64")
    if args.tol is not None:
        ford.CONTAIN_TOL = args.tol
    rep = run_suite(args.suite, theta, K, args.grid, args.seed)
    if args.json_out:
        _write_text(args.json_out, rep.to_json(indent=2, sort_keys=True) + "\n")
    s = rep.summary()
    for c in rep.failures():
        print(f"FAIL {c.id}  margin={c.margin:.3g}")
    print(f"{args.suite} theta={theta:.12g}: {s['passed']}/{s['total']} claims pass")
    return 0 if rep.ok else 1


def cmd_export(args):
    from . import export

    theta = parse_theta(args.theta)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    w = args.what
    if w == "spheres":
        lo, hi = parse_k_window(args.k_window)
        fams = args.families.split(",") if args.families else list(export.FAMILIES)
        bad = [f for f in fams if f not in export.FAMILIES]
        if bad:
            raise UsageError(f"unknown families {bad}")
        sids = [(f, k) for f in fams for k in range(lo, hi + 1)]
        paths = export.export_spheres(out, theta, sids, n_alpha=max(args.grid // 8, 9), n_phi=max(args.grid // 4, 16))
    elif w == "giraud":
        _need_ford_theta(theta)
        base = _sid(args.base)
        other = _sid(args.other)
        paths = export.export_giraud(out, theta, base, other, args.grid)
    elif w == "triple-curves":
        _need_ford_theta(theta)
        paths = export.export_triple_curves(out, theta, n=args.grid)
    elif w in ("c0", "complex", "polyhedron", "rcircle"):
        if not _is_pi3(theta):
            raise UsageError(f"export {w!r} needs theta = pi/3")
        paths = {"c0": lambda: export.export_c0(out), "complex": lambda: export.export_complex(out),
                 "polyhedron": lambda: export.export_polyhedron(out), "rcircle": lambda: export.export_rcircle(out)}[w]()
    else:
        if args.name not in export.FIGURES:
            raise UsageError(f"figure must be one of {', '.join(export.FIGURES)}")
        if args.name == "curves" and not _is_pi3(theta):
            raise UsageError("figure 'curves' needs theta = pi/3")
        paths = export.export_figure(args.name, out, theta)
    meta = {p.name: export.file_metadata(p) for p in paths if p.suffix in (".csv", ".obj")}
    if args.json_out:
        _write_text(args.json_out, json.dumps(meta, indent=2, sort_keys=True) + "\n")
    for p in paths:
        m = meta.get(p.name)
        print(p if m is None else f"{p}  ({m['points']} points)")
    return 0


def _sid(text):
    import re

    m = re.fullmatch(r"(plus|minus|star|diamond)(-?\d+)", text or "")
    if not m:
        raise UsageError(f"sphere id must look like plus0 or minus-1, got {text!r}")
    return (m.group(1), int(m.group(2)))


def cmd_presentation(args):
    from .boundary import PAPER_RELATORS
    from .presentation import S782, UVW, abelianization, format_abelian, x_presentation

    lines = ["edge-cycle relations in x1..x8:"]
    lines += [f"  ({i}) {r} = id" for i, r in enumerate(PAPER_RELATORS, 1)]
    lines.append("with u = x1, v = x2, w = x7:")
    lines.append(f"  {UVW}")
    lines.append("s782:")
    lines.append(f"  {S782}")
    ab = [abelianization(p) for p in (x_presentation(), UVW, S782)]
    lines.append(f"abelianization x-presentation: {format_abelian(*ab[0])}")
    if ab[1] == ab[2]:
        lines.append(f"abelianization: {format_abelian(*ab[1])} (both)")
    else:
        lines.append(f"abelianization: {format_abelian(*ab[1])} vs {format_abelian(*ab[2])}")
    lines.append("(necessary-condition check, not an isomorphism proof)")
    print("\n".join(lines))
    return 0


def _write_text(path, text):
    Path(path).write_text(text)


def build_parser():
    p = argparse.ArgumentParser(prog="chford", description="Ford domains of the (4,4,inf) triangle groups")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, k_default="5", grid_default=720):
        sp.add_argument("--theta", default="pi/3")
        sp.add_argument("--k-window", "--k", dest="k_window", default=k_default)
        sp.add_argument("--grid", type=int, default=grid_default)
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--json", dest="json_out", default=None)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("classify", help="traces and types of the main elements")
    sp.add_argument("--theta", default="pi/3")
    sp.add_argument("--json", dest="json_out", default=None)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="write point clouds and meshes")
    sp.add_argument("what", choices=EXPORTS)
    sp.add_argument("name", nargs="?", default=None, help="figure name for 'export figure'")
    common(sp, k_default="-1..1", grid_default=256)
    sp.add_argument("--out", default=".")
    sp.add_argument("--families", default=None, help="comma separated, default all four")
    sp.add_argument("--base", default="plus0")
    sp.add_argument("--other", default="minus0")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("presentation", help="print the group presentations")
    sp.set_defaults(func=cmd_presentation)
    return p


def _glue_negative(argv):
    # "--k -1..1" would otherwise read "-1..1" as an option
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in ("--k", "--k-window", "--theta") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
