"""Write the figure point clouds and meshes into ./figures."""
from pathlib import Path

from chford.export import FIGURES, export_complex, export_figure, export_polyhedron, file_metadata
from chford.triangle import PI3

out = Path("figures")
for name in FIGURES:
    for p in export_figure(name, out / name, PI3):
        m = file_metadata(p)
        print(f"{p}: {m['points']} points")
for p in export_complex(out) + export_polyhedron(out):
    print(p)
