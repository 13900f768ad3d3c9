from mubkit.mols.latin import (
    AffinePlaneIndexing,
    LatinSquare,
    LatinSquareError,
    MolsSet,
    affine_plane,
    are_orthogonal,
    cyclic_square,
    mols_from_field,
    two_points_one_line,
)
from mubkit.mols.search import (
    SweepResult,
    Transversal,
    exhaustive_complete_search,
    find_orthogonal_mate,
    has_orthogonal_mate,
    mate_sweep,
    reduced_squares,
    transversals,
)

__all__ = [
    "AffinePlaneIndexing",
    "LatinSquare",
    "LatinSquareError",
    "MolsSet",
    "SweepResult",
    "Transversal",
    "affine_plane",
    "are_orthogonal",
    "cyclic_square",
    "exhaustive_complete_search",
    "find_orthogonal_mate",
    "has_orthogonal_mate",
    "mate_sweep",
    "mols_from_field",
    "reduced_squares",
    "transversals",
    "two_points_one_line",
]
