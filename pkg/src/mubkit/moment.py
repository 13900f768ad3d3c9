"""Moment-map images of projective points and the simplex decomposition
induced by the block structure of an A-basis.

mu([z_0, ..., z_{d-1}]) = (|z_0|^2, ..., |z_{d-1}|^2) / (2 |z|^2).
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

HALF = Fraction(1, 2)


class MomentError(ValueError):
    pass


def _as_vector(z) -> np.ndarray:
    v = np.asarray(z, dtype=np.complex128).ravel()
    if v.size == 0 or not np.any(v):
        raise MomentError("projective point needs a nonzero vector")
    return v


def moment_map(z) -> np.ndarray:
    """Float image in R^d, entries nonnegative and summing to 1/2."""
    v = _as_vector(z)
    w = np.abs(v) ** 2
    return 0.5 * w / w.sum()


def _abs2_exact(c) -> Fraction:
    if isinstance(c, (int, Fraction)):
        return Fraction(c) ** 2
    c = complex(c)
    # Fraction(float) is exact, so this is |c|^2 with no rounding
    return Fraction(c.real) ** 2 + Fraction(c.imag) ** 2


def moment_map_exact(z) -> tuple[Fraction, ...]:
    """Exact rational image; entries of z may be ints, Fractions, floats or complex."""
    w = [_abs2_exact(c) for c in z]
    total = sum(w, Fraction(0))
    if total == 0:
        raise MomentError("projective point needs a nonzero vector")
    return tuple(HALF * x / total for x in w)


def chart(image, drop: int = 0):
    """Drop one axis (default the z_0 axis) to get the affine chart."""
    return tuple(x for i, x in enumerate(image) if i != drop)


def fixed_point_images(d: int) -> np.ndarray:
    """Images (1/2) e_i of the coordinate points, shape (d, d)."""
    if d < 2:
        raise MomentError("ambient dimension must be at least 2")
    return np.array([moment_map(np.eye(d)[i]) for i in range(d)])


def fixed_point_images_exact(d: int) -> list[tuple[Fraction, ...]]:
    if d < 2:
        raise MomentError("ambient dimension must be at least 2")
    return [moment_map_exact([1 if j == i else 0 for j in range(d)]) for i in range(d)]


def barycentric(point, d: int) -> np.ndarray:
    """Solve point = sum_i w_i (1/2) e_i with sum w = 1; returns w."""
    verts = fixed_point_images(d)
    a = np.vstack([verts.T, np.ones(d)])
    b = np.append(np.asarray(point, dtype=np.float64), 1.0)
    w, *_ = np.linalg.lstsq(a, b, rcond=None)
    return w


# -- A-simplex decomposition ----------------------------------------------


@dataclass(frozen=True)
class SubspaceCoordinates:
    """N + 1 index blocks of {0 .. N^2 - 1}, each of size N, sharing coordinate 0."""

    blocks: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.blocks) - 1


def canonical_coordinates(n: int) -> SubspaceCoordinates:
    """Block j = {0} + {1 + j (N - 1), ..., (j + 1)(N - 1)}.

    Coordinate 0 is the identity, block j carries A_{j,1} .. A_{j,N-1} of the
    A-basis ordering used by ``classes.abasis_operators``.
    """
    if n < 1:
        raise MomentError("N must be positive")
    blocks = []
    for j in range(n + 1):
        start = 1 + j * (n - 1)
        blocks.append(frozenset([0, *range(start, start + n - 1)]))
    return SubspaceCoordinates(tuple(blocks))


def vertex(i: int, d: int) -> tuple[Fraction, ...]:
    return tuple(HALF if j == i else Fraction(0) for j in range(d))


def p1_simplices(sc: SubspaceCoordinates) -> list[set[tuple[Fraction, ...]]]:
    n = sc.n
    d = n * n
    return [{vertex(i, d) for i in block} for block in sc.blocks]


@dataclass(frozen=True)
class DecompositionReport:
    shared_vertex_ok: bool
    coincidence_ok: bool
    regularity_ok: bool
    shared_vertices: tuple[tuple[Fraction, ...], ...]

    @property
    def passed(self) -> bool:
        return self.shared_vertex_ok and self.coincidence_ok and self.regularity_ok


def _is_regular_exact(verts: set[tuple[Fraction, ...]]) -> bool:
    pts = list(verts)
    d2 = {sum((a - b) ** 2 for a, b in zip(p, q)) for p, q in itertools.combinations(pts, 2)}
    return len(d2) <= 1


def verify_decomposition(sc: SubspaceCoordinates, n: int) -> DecompositionReport:
    """Shared vertex (1/2) e_0, vertex-set coincidence and regularity, all exact."""
    d = n * n
    if len(sc.blocks) != n + 1 or any(len(b) != n for b in sc.blocks):
        raise MomentError(f"need {n + 1} blocks of size {n}")
    if any(not 0 <= i < d for b in sc.blocks for i in b):
        raise MomentError(f"block index outside 0..{d - 1}")
    simplices = p1_simplices(sc)
    shared = set.intersection(*simplices)
    a_simplex = {vertex(i, d) for i in range(d)}
    union = set.union(*simplices)
    pairwise_ok = all(
        simplices[i] & simplices[j] == {vertex(0, d)}
        for i in range(n + 1)
        for j in range(i + 1, n + 1)
    )
    return DecompositionReport(
        shared_vertex_ok=shared == {vertex(0, d)},
        coincidence_ok=union == a_simplex and pairwise_ok,
        regularity_ok=all(_is_regular_exact(s) for s in simplices) and _is_regular_exact(a_simplex),
        shared_vertices=tuple(sorted(shared)),
    )


def _equal_partitions(items: list[int], size: int):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for combo in itertools.combinations(rest, size - 1):
        remaining = [x for x in rest if x not in combo]
        for tail in _equal_partitions(remaining, size):
            yield [(first, *combo)] + tail


def count_shared_vertex_decompositions(n: int) -> int:
    """Decompositions of the A-simplex vertex set into N + 1 simplices of N
    vertices that pairwise meet in exactly one common vertex, counted by
    exhaustive enumeration (N <= 2)."""
    if n > 2:
        raise MomentError("decomposition enumeration is limited to N <= 2")
    if n < 1:
        raise MomentError("N must be positive")
    d = n * n
    if n == 1:
        return 1
    count = 0
    for shared in range(d):
        others = [i for i in range(d) if i != shared]
        for parts in _equal_partitions(others, n - 1):
            if len(parts) == n + 1:
                count += 1
    return count


def images_csv(images) -> str:
    pts = np.asarray(images, dtype=np.float64)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"mu{i}" for i in range(pts.shape[1])])
    for row in pts:
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()
