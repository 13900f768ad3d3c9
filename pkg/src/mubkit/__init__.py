"""Construction and verification toolkit linking complete sets of mutually
unbiased bases, commuting operator classes, complementarity-polytope geometry,
moment-map simplices and mutually orthogonal Latin squares."""

from mubkit.numerics import DEFAULT_TOLERANCE, TolerancePolicy

__all__ = ["DEFAULT_TOLERANCE", "TolerancePolicy"]
__version__ = "0.1.0"
