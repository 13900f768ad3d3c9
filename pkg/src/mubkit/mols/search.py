"""Transversals, orthogonal mates and exhaustive searches at small order."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from mubkit.mols import kernels
from mubkit.mols.latin import LatinSquare, LatinSquareError, are_orthogonal

MAX_MATE_ORDER = 7
MAX_REDUCED_ORDER = 6
MAX_EXHAUSTIVE_ORDER = 4


@dataclass(frozen=True)
class Transversal:
    cells: tuple[tuple[int, int], ...]  # (row, column), one per row

    def symbols(self, s: LatinSquare) -> list[int]:
        return [int(s.grid[r, c]) for r, c in self.cells]


def _transversal_choices(s: LatinSquare) -> np.ndarray:
    return kernels.transversals(np.ascontiguousarray(s.grid, dtype=np.int64))


def transversals(s: LatinSquare) -> list[Transversal]:
    return [Transversal(tuple((r, int(c)) for r, c in enumerate(row))) for row in _transversal_choices(s)]


def _check_mate_order(s: LatinSquare) -> None:
    if s.order > MAX_MATE_ORDER:
        raise LatinSquareError(f"mate search limited to order <= {MAX_MATE_ORDER}")


def find_orthogonal_mate(s: LatinSquare) -> LatinSquare | None:
    """A mate built from n disjoint transversals (transversal t -> symbol t)."""
    _check_mate_order(s)
    n = s.order
    choices = _transversal_choices(s)
    picked = kernels.disjoint_transversals(kernels.transversal_masks(choices), n)
    if len(picked) == 0:
        return None
    mate = np.full((n, n), -1, dtype=np.int64)
    for label, k in enumerate(picked):
        mate[np.arange(n), choices[k]] = label
    return LatinSquare(mate)


def has_orthogonal_mate(s: LatinSquare) -> bool:
    return find_orthogonal_mate(s) is not None


def reduced_squares(n: int):
    """Iterate over all reduced Latin squares of order n <= 6."""
    if not 1 <= n <= MAX_REDUCED_ORDER:
        raise LatinSquareError(f"reduced-square enumeration limited to 1 <= n <= {MAX_REDUCED_ORDER}")
    for g in kernels.reduced_squares(n):
        yield LatinSquare(g)


def _mate_flags(grids: np.ndarray) -> list[bool]:
    flags = []
    n = grids.shape[1]
    for g in grids:
        choices = kernels.transversals(g)
        picked = kernels.disjoint_transversals(kernels.transversal_masks(choices), n)
        flags.append(len(picked) > 0)
    return flags


@dataclass(frozen=True)
class SweepResult:
    order: int
    squares: int
    with_mate: int
    flags: tuple[bool, ...]


def mate_sweep(n: int, workers: int = 1, chunk: int = 512) -> SweepResult:
    """Test every reduced square of order n for an orthogonal mate.

    Mate existence is invariant under row, column and symbol permutations, and
    every Latin square is isotopic to a reduced one, so the reduced squares
    decide the question for the whole order.
    """
    if n > MAX_REDUCED_ORDER:
        raise LatinSquareError(f"mate sweep limited to order <= {MAX_REDUCED_ORDER}")
    grids = kernels.reduced_squares(n)
    parts = [grids[i : i + chunk] for i in range(0, len(grids), chunk)]
    if workers <= 1 or len(parts) <= 1:
        results = [_mate_flags(p) for p in parts]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mate_flags, parts))
    flags = tuple(f for part in results for f in part)
    return SweepResult(n, len(flags), sum(flags), flags)


def normalized_squares(n: int) -> list[LatinSquare]:
    """All order-n squares whose first row is 0..n-1 (reduced squares with rows 1.. permuted)."""
    out = []
    seen = set()
    for r in reduced_squares(n):
        for perm in itertools.permutations(range(1, n)):
            sq = r.permuted(rows=(0,) + perm)
            key = sq.grid.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(sq)
    return out


def exhaustive_complete_search(n: int) -> int:
    """Largest number of pairwise orthogonal Latin squares of order n (2 <= n <= 4).

    Any MOLS set can be normalized so that every square has first row 0..n-1
    (per-square symbol relabeling) and the first square is reduced (a joint
    row permutation fixing row 0); the search is a maximum clique over the
    orthogonality graph of normalized squares seeded by a reduced square.
    """
    if not 2 <= n <= MAX_EXHAUSTIVE_ORDER:
        raise LatinSquareError(f"exhaustive search limited to 2 <= n <= {MAX_EXHAUSTIVE_ORDER}")
    squares = normalized_squares(n)
    m = len(squares)
    adj = [
        {j for j in range(m) if j != i and are_orthogonal(squares[i], squares[j])}
        for i in range(m)
    ]
    best = 0

    def extend(size: int, candidates: set[int]) -> None:
        nonlocal best
        best = max(best, size)
        if size + len(candidates) <= best:
            return
        for v in sorted(candidates):
            extend(size + 1, {u for u in candidates if u > v} & adj[v])

    for i, sq in enumerate(squares):
        if sq.is_reduced():
            extend(1, adj[i])
    return best
