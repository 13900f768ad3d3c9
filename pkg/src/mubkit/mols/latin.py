"""Latin squares, orthogonality, field constructions and affine-plane indexing."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from mubkit import gf as _gf

MAX_FIELD_ORDER = 16


class LatinSquareError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LatinSquare:
    """Order-n grid over symbols 0..n-1; validated on construction."""

    grid: np.ndarray

    def __post_init__(self):
        g = np.array(self.grid, dtype=np.int64)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 1:
            raise LatinSquareError(f"grid must be square and non-empty, got shape {g.shape}")
        n = g.shape[0]
        want = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(g[i]), want):
                raise LatinSquareError(f"row {i} is not a permutation of 0..{n - 1}: {g[i].tolist()}")
        for j in range(n):
            if not np.array_equal(np.sort(g[:, j]), want):
                raise LatinSquareError(f"column {j} is not a permutation of 0..{n - 1}: {g[:, j].tolist()}")
        g.setflags(write=False)
        object.__setattr__(self, "grid", g)

    @property
    def order(self) -> int:
        return self.grid.shape[0]

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and np.array_equal(self.grid, other.grid)

    def __hash__(self):
        return hash(self.grid.tobytes())

    def tolist(self) -> list[list[int]]:
        return self.grid.tolist()

    def permuted(self, rows=None, cols=None, symbols=None) -> "LatinSquare":
        g = self.grid
        if rows is not None:
            g = g[np.asarray(rows)]
        if cols is not None:
            g = g[:, np.asarray(cols)]
        if symbols is not None:
            g = np.asarray(symbols)[g]
        return LatinSquare(g)

    def is_reduced(self) -> bool:
        n = self.order
        return bool(np.array_equal(self.grid[0], np.arange(n)) and np.array_equal(self.grid[:, 0], np.arange(n)))


def cyclic_square(n: int) -> LatinSquare:
    i = np.arange(n)
    return LatinSquare((i[:, None] + i[None, :]) % n)


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    """True iff the superposition contains every ordered symbol pair once."""
    if a.order != b.order:
        raise LatinSquareError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order
    codes = (a.grid * n + b.grid).ravel()
    return len(np.unique(codes)) == n * n


@dataclass(frozen=True, eq=False)
class MolsSet:
    order: int
    squares: tuple[LatinSquare, ...]

    def __post_init__(self):
        object.__setattr__(self, "squares", tuple(self.squares))
        for s in self.squares:
            if s.order != self.order:
                raise LatinSquareError(f"square of order {s.order} in an order-{self.order} set")

    @property
    def size(self) -> int:
        return len(self.squares)

    @property
    def is_complete(self) -> bool:
        return self.size == self.order - 1 and self.pairwise_orthogonal()

    def pairwise_orthogonal(self) -> bool:
        return all(
            are_orthogonal(self.squares[i], self.squares[j])
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def non_orthogonal_pairs(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.size)
            for j in range(i + 1, self.size)
            if not are_orthogonal(self.squares[i], self.squares[j])
        ]


def mols_from_field(q: int, moduli: dict | None = None) -> MolsSet:
    """Complete set L_a(x, y) = a*x + y over GF(q), a != 0, in field order.

    Rows, columns and symbols are field elements by their enumeration index.
    """
    if _gf.prime_power(q) is None:
        raise LatinSquareError(f"{q} is not a prime power")
    if q > MAX_FIELD_ORDER:
        raise LatinSquareError(f"order {q} exceeds limit {MAX_FIELD_ORDER}")
    field = _gf.galois_field(q, moduli=moduli)
    xs = np.arange(q)
    squares = []
    for a in range(1, q):
        ax = field.mul_table[a, xs]
        squares.append(LatinSquare(field.add_table[ax[:, None], xs[None, :]]))
    return MolsSet(q, tuple(squares))


# -- affine plane ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AffinePlaneIndexing:
    """Points are cells ``x * n + y``; ``lines[c, p]`` is the line of point p in class c.

    Class 0 is rows, class 1 columns, class j + 1 the level sets of square j.
    """

    order: int
    lines: np.ndarray  # shape (n + 1, n^2)

    @property
    def points(self) -> int:
        return self.order**2

    def line_points(self, cls: int, line: int) -> np.ndarray:
        return np.nonzero(self.lines[cls] == line)[0]

    def omission_tuple(self, point: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.lines[:, point])


def _plane_violations(plane: AffinePlaneIndexing) -> list[str]:
    n = plane.order
    problems = []
    for c in range(n + 1):
        counts = np.bincount(plane.lines[c], minlength=n)
        if len(counts) != n or np.any(counts != n):
            problems.append(f"class {c} is not a partition into {n} lines of {n} points")
    agree = (plane.lines[:, :, None] == plane.lines[:, None, :]).sum(axis=0)
    off = agree[~np.eye(n * n, dtype=bool)]
    if np.any(off != 1):
        problems.append("some pair of points does not share exactly one line")
    return problems


def affine_plane(m: MolsSet) -> AffinePlaneIndexing:
    if not m.is_complete:
        raise LatinSquareError(f"affine plane needs a complete set of {m.order - 1} MOLS, got {m.size}")
    n = m.order
    x, y = np.divmod(np.arange(n * n), n)
    rows = [x, y] + [s.grid[x, y] for s in m.squares]
    lines = np.array(rows, dtype=np.int64)
    lines.setflags(write=False)
    plane = AffinePlaneIndexing(n, lines)
    problems = _plane_violations(plane)
    if problems:
        raise LatinSquareError("; ".join(problems))
    return plane


def two_points_one_line(plane: AffinePlaneIndexing) -> bool:
    return not _plane_violations(plane)


# -- serialization --------------------------------------------------------


def to_dict(m: MolsSet) -> dict:
    return {"order": m.order, "squares": [s.tolist() for s in m.squares]}


def from_dict(data: dict) -> MolsSet:
    try:
        n = int(data["order"])
        raw = data["squares"]
    except (KeyError, TypeError, ValueError) as exc:
        raise LatinSquareError(f"malformed MOLS document: {exc}") from exc
    squares = []
    for idx, grid in enumerate(raw):
        arr = np.asarray(grid)
        if arr.shape != (n, n) or not np.issubdtype(arr.dtype, np.integer):
            raise LatinSquareError(f"square {idx}: expected a {n}x{n} integer grid")
        try:
            squares.append(LatinSquare(arr))
        except LatinSquareError as exc:
            raise LatinSquareError(f"square {idx}: {exc}") from None
    return MolsSet(n, tuple(squares))


def dumps(m: MolsSet) -> str:
    return json.dumps(to_dict(m), separators=(",", ":")) + "\n"


def loads(text: str) -> MolsSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatinSquareError(f"not valid JSON: {exc}") from exc
    return from_dict(data)


def save(m: MolsSet, path) -> None:
    Path(path).write_text(dumps(m))


def load(path) -> MolsSet:
    return loads(Path(path).read_text())
