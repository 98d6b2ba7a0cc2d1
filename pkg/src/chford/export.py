"""Point clouds and meshes for plotting.

CSV files carry the columns ``kind,label,alpha,beta,w,x,y,t`` (blank where a
column does not apply).  OBJ files embed Heisenberg points as ``(x, y, t)``.
Output is deterministic for fixed arguments.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .heisenberg import HeisenbergPoint, Infinity, coords_from_lifts, lift_array
from .spheres import FAMILIES, SphereId, boundary_lift, giraud_trace, sphere_lift, sphere_of, triple_curves
from .triangle import PI3

CSV_COLUMNS = ("kind", "label", "alpha", "beta", "w", "x", "y", "t")
FIGURES = ("double", "triple", "cross", "curves", "fd")


def _fmt(v):
    return "" if v is None else f"{float(v):.12g}"


def write_csv(path, rows):
    """rows: iterable of dicts keyed by CSV_COLUMNS."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(CSV_COLUMNS)
        for r in rows:
            wr.writerow([r.get("kind", ""), r.get("label", "")] + [_fmt(r.get(c)) for c in CSV_COLUMNS[2:]])
    return path


def lift_rows(kind, label, lifts, geo=None):
    z, t, _ = coords_from_lifts(np.asarray(lifts).reshape(-1, 3))
    rows = []
    for i in range(len(z)):
        r = {"kind": kind, "label": label, "x": z[i].real, "y": z[i].imag, "t": t[i]}
        if geo is not None:
            r["alpha"], r["beta"], r["w"] = geo[i]
        rows.append(r)
    return rows


def write_obj(path, vertices, faces=(), lines=(), groups=None):
    """Write an OBJ file.  ``faces``/``lines`` hold 0-based vertex indices."""
    path = Path(path)
    with path.open("w") as fh:
        fh.write("# x y t\n")
        for v in vertices:
            fh.write("v {:.12g} {:.12g} {:.12g}\n".format(*v))
        if groups is None:
            groups = [("mesh", list(faces), list(lines))]
        for name, fs, ls in groups:
            fh.write(f"g {name}\n")
            for f in fs:
                fh.write("f " + " ".join(str(i + 1) for i in f) + "\n")
            for ln in ls:
                fh.write("l " + " ".join(str(i + 1) for i in ln) + "\n")
    return path


def write_json(path, obj):
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")
    return path


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(type(x))


def _xyt(lifts):
    z, t, _ = coords_from_lifts(np.asarray(lifts).reshape(-1, 3))
    return np.stack([z.real, z.imag, t], axis=1)


# --------------------------------------------------------------------------
# individual exports


def sphere_mesh(sphere, n_alpha=33, n_phi=64):
    """Vertices and quad faces covering the ideal boundary of a sphere."""
    a = np.linspace(-np.pi / 2, np.pi / 2, n_alpha)
    ph = np.linspace(0, 2 * np.pi, n_phi, endpoint=False)
    A, P = np.meshgrid(a, ph, indexing="ij")
    verts = _xyt(boundary_lift(sphere, A, P))
    faces = []
    for i in range(n_alpha - 1):
        for j in range(n_phi):
            jn = (j + 1) % n_phi
            faces.append((i * n_phi + j, i * n_phi + jn, (i + 1) * n_phi + jn, (i + 1) * n_phi + j))
    return verts, faces


def export_spheres(out, theta, sids, name="spheres", n_alpha=33, n_phi=64):
    verts, groups = [], []
    for sid in sids:
        v, f = sphere_mesh(sphere_of(sid, theta), n_alpha, n_phi)
        off = sum(len(x) for x in verts)
        verts.append(v)
        groups.append((str(SphereId(*sid)), [tuple(i + off for i in q) for q in f], []))
    path = Path(out) / f"{name}.obj"
    write_obj(path, np.concatenate(verts), groups=groups)
    return [path]


def export_giraud(out, theta, base, other, grid=256):
    tr = giraud_trace(sphere_of(base, theta), sphere_of(other, theta), theta, grid=grid)
    geo = np.stack([tr.alpha, tr.beta, tr.w], axis=1) if len(tr) else np.zeros((0, 3))
    label = f"{SphereId(*base)}|{SphereId(*other)}"
    path = Path(out) / f"giraud_{SphereId(*base)}_{SphereId(*other)}.csv"
    write_csv(path, lift_rows("giraud", label, tr.lifts, geo) if len(tr) else [])
    return [path]


def export_triple_curves(out, theta, n=200):
    """L1, C1, C2 in geographic coordinates on I_0^+ (the ``cross`` picture)."""
    tc = triple_curves(theta, n)
    plus = sphere_of(("plus", 0), theta)
    rows = []
    for label, arr in (("L1", tc.L1), ("C1", tc.C1), ("C2", tc.C2)):
        lifts = sphere_lift(plus, arr[:, 0], arr[:, 1], arr[:, 2], check=False)
        rows += lift_rows("triple-curve", label, lifts, arr)
    path = Path(out) / "triple_curves.csv"
    write_csv(path, rows)
    return [path]


def export_c0(out, n=2000):
    from .boundary import curve_c, named_points

    rows = []
    for j in (0, -1):
        for arc in curve_c(j, n):
            rows += lift_rows("arc", arc.label, arc.lifts)
    pts = named_points()
    for lab in ("q3", "v0", "q2", "v-1"):
        p = pts[lab]
        rows.append({"kind": "vertex", "label": lab, "x": p.z.real, "y": p.z.imag, "t": p.t})
    path = Path(out) / "c0.csv"
    write_csv(path, rows)
    return [path]


def export_rcircle(out, n=301, x_range=(-1.5, 1.5)):
    xs = np.linspace(*x_range, n)
    lifts = lift_array(xs + 1j * np.sqrt(3) / 2, np.sqrt(3) * xs)
    path = Path(out) / "rcircle_L.csv"
    write_csv(path, lift_rows("rcircle", "L", lifts))
    return [path]


def _point_json(p):
    if isinstance(p, Infinity):
        return "inf"
    return {"x": p.z.real, "y": p.z.imag, "t": p.t}


def complex_json(cx, pairings=()):
    return {
        "vertices": {k: _point_json(v) for k, v in sorted(cx.vertices.items())},
        "edges": {k: {"ends": [u, v], "carrier": c} for k, (u, v, c) in sorted(cx.edges.items())},
        "faces": {k: {"cycle": list(cyc), "edges": list(el), "carrier": car}
                  for k, (cyc, el, car) in sorted(cx.faces.items())},
        "pairings": [{"name": p.name, "word": p.word, "source": list(p.source), "target": list(p.target),
                      "source_face": p.source_face, "target_face": p.target_face} for p in pairings],
        "euler": cx.euler(),
        "census": {str(k): v for k, v in cx.census().items()},
    }


def _face_polylines(cx, name):
    """OBJ of the finite face boundaries as polylines (faces through qinf are left open)."""
    labels = sorted(k for k, v in cx.vertices.items() if not isinstance(v, Infinity))
    idx = {k: i for i, k in enumerate(labels)}
    verts = [(cx.vertices[k].z.real, cx.vertices[k].z.imag, cx.vertices[k].t) for k in labels]
    groups = []
    for f, (cyc, _, _) in sorted(cx.faces.items()):
        if "qinf" in cyc:
            i = cyc.index("qinf")
            open_cyc = list(cyc[i + 1:]) + list(cyc[:i])
            groups.append((f, [], [[idx[v] for v in open_cyc]]))
        else:
            groups.append((f, [], [[idx[v] for v in cyc] + [idx[cyc[0]]]]))
    return verts, groups


def export_complex(out):
    from .boundary import tube_complex

    cx = tube_complex()
    j = write_json(Path(out) / "tube_complex.json", complex_json(cx))
    v, g = _face_polylines(cx, "tube")
    o = write_obj(Path(out) / "tube_complex.obj", v, groups=g)
    return [j, o]


def export_polyhedron(out):
    from .boundary import polyhedron_P

    cx, pairs = polyhedron_P()
    j = write_json(Path(out) / "polyhedron.json", complex_json(cx, pairs))
    v, g = _face_polylines(cx, "P")
    o = write_obj(Path(out) / "polyhedron.obj", v, groups=g)
    return [j, o]


# --------------------------------------------------------------------------
# named figures


def export_figure(name, out, theta=PI3):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    if name == "double":
        return export_spheres(out, theta, [("plus", 0), ("minus", -1), ("star", 0)], name="double")
    if name == "triple":
        return export_spheres(out, theta, [("plus", 0), ("minus", 0), ("star", 0)], name="triple")
    if name == "cross":
        return export_triple_curves(out, theta)
    if name == "curves":
        return export_c0(out)
    if name == "fd":
        sids = [(f, k) for f in FAMILIES for k in (-1, 0, 1)]
        return export_spheres(out, theta, sids, name="fd") + export_rcircle(out)
    raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")


def file_metadata(path):
    """Point count and bounding box of a CSV or OBJ export."""
    path = Path(path)
    pts = []
    if path.suffix == ".obj":
        for line in path.read_text().splitlines():
            if line.startswith("v "):
                pts.append([float(x) for x in line.split()[1:4]])
    elif path.suffix == ".csv":
        with path.open() as fh:
            for r in csv.DictReader(fh):
                pts.append([float(r["x"]), float(r["y"]), float(r["t"])])
    else:
        raise ValueError(f"no metadata for {path.suffix}")
    arr = np.asarray(pts, float).reshape(-1, 3)
    bbox = [arr.min(0).tolist(), arr.max(0).tolist()] if len(arr) else None
    return {"points": len(arr), "bbox": bbox}
