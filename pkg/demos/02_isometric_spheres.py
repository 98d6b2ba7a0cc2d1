"""Isometric spheres, their intersections and the triple-intersection curves."""
import numpy as np

from chford.ford import triple_min
from chford.spheres import FAMILIES, giraud_trace, sphere_of, tangency_points, triple_curves
from chford.triangle import PI3

theta = PI3
print("centers and radii for k = 0, 1")
for f in FAMILIES:
    for k in (0, 1):
        s = sphere_of((f, k), theta)
        print(f"  {s.id!s:10s} center z={s.center.z:.4f} t={s.center.t:+.4f}  r={s.radius:.4f}")

# a Giraud disk, traced by bisection in w on I_0^+
tr = giraud_trace(sphere_of(("plus", 0), theta), sphere_of(("minus", 0), theta), theta, grid=256)
print(f"\nI0+ and I0- meet in {len(tr)} traced points; worst residual {np.abs(tr.residual).max():.1e}")

# the triple intersection I0+, I0-, I0* is two crossing geodesics
tc = triple_curves(theta, 50)
print("crossing point (alpha, beta, w):", np.round(tc.center, 4))

# I0+, I0*, I-1- only share p2 at pi/3; the residual gap opens below pi/3
for th in (0.0, 0.6, PI3 - 0.02, PI3):
    val, _ = triple_min(th)
    print(f"theta={th:.3f}: min of max(|f*|,|f-|) on I0+ = {val:.2e}")

print("\ntangencies at pi/3")
for t in tangency_points(theta, ks=(0,)):
    names = ", ".join(str(s) for s in t.spheres)
    print(f"  {names:30s} word {t.word:6s} point z={t.point.z:.4f} t={t.point.t:+.4f}")
