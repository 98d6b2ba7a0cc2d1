"""Verify the hypotheses of the Poincare polyhedron theorem for a few parameters."""
from chford.ford import verify_all
from chford.triangle import PI3

for theta in (0.0, 0.5, PI3):
    rep = verify_all(theta)
    s = rep.summary()
    print(f"theta={theta:.4f}: {s['passed']}/{s['total']} claims pass")
    for kind, ok in s["by_kind"].items():
        print(f"    {kind:12s} {'ok' if ok else 'FAILED'}")
    for c in rep.failures():
        print("    failing:", c.id, c.detail)
