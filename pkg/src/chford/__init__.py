"""Complex hyperbolic (4,4,inf) triangle groups and their Ford domains."""
from .hermitian import DomainError, H, cayley_transform, hermitian_product, projective_equal
from .heisenberg import INF, HeisenbergPoint, cygan_distance
from .isometry import GroupElement, classify
from .triangle import PI3, build, evaluate, parse_word
from .spheres import SphereId, isometric_sphere, side_of, sphere_of
from .ford import FordReport, verify_all

__all__ = [
    "DomainError", "H", "cayley_transform", "hermitian_product", "projective_equal",
    "INF", "HeisenbergPoint", "cygan_distance", "GroupElement", "classify",
    "PI3", "build", "evaluate", "parse_word", "SphereId", "isometric_sphere", "side_of",
    "sphere_of", "FordReport", "verify_all",
]
__version__ = "0.1.0"
