"""loxsurf: loxodromes on rotational surfaces in Euclidean 3-space.

Builds rotational surfaces from arc-length profile curves (flat, constant
Gaussian curvature, constant principal-curvature ratio, minimal), constructs
constant-angle curves (loxodromes) on them with closed-form or numerically
integrated longitude, evaluates curvature, torsion and normal curvature, and
verifies every closed form against an independent finite-difference oracle.
"""

__version__ = "0.1.0"

from . import errors
from .numerics import BACKEND

__all__ = ["BACKEND", "errors", "__version__"]
