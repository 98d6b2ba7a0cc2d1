"""Walk through the one-parameter family of (4,4,inf) triangle groups.

Run with ``python3 demos/01_triangle_family.py``.
"""
import numpy as np

from chford.isometry import classify
from chford.triangle import PI3, build, eisenstein_residual, evaluate

# The product I1 I3 I2 I3 controls discreteness: loxodromic below pi/3,
# parabolic at pi/3, elliptic above.
for theta in np.linspace(0, 1.4, 8):
    g = build(theta)
    e = g.I1 @ g.I3 @ g.I2 @ g.I3
    print(f"theta={theta:5.3f}  tr={g.trace_I1I3I2I3().real:8.4f}  {classify(e)}")

g = build(PI3)
print("\nat theta = pi/3")
print("S      :", classify(g.S))
print("T      :", classify(g.T))
print("S^4 = id ?", evaluate(g, "SSSS").is_identity())
print("(T^-1 S)^4 = id ?", evaluate(g, "(T^-1S)^4").is_identity())

# all entries sit in the Eisenstein integers
worst = max(eisenstein_residual(x) for x in np.concatenate([g.S.matrix.ravel(), (g.I3 @ g.I1).matrix.ravel()]))
print(f"largest distance of an S or I3I1 entry from Z[omega]: {worst:.1e}")
print(np.round(g.S.matrix, 6))
