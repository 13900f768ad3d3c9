"""Complementarity-polytope geometry in the real space of traceless Hermitians.

Coordinates of a unit-trace Hermitian A are x_i = Tr(A g_i) / 2 over the
generalized Gell-Mann matrices g_i (Tr(g_i g_j) = 2 delta_ij), so that the
Euclidean inner product of two embedded points is (Tr(AB) - 1/N) / 2 and the
squared distance is Tr((A - B)^2) / 2. The maximally mixed state I/N maps to
the origin.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from mubkit.mols.latin import MolsSet, affine_plane
from mubkit.mub import MubSet, verify_mub_set
from mubkit.numerics import DEFAULT_TOLERANCE, TolerancePolicy, hermitian_deviation

REGULARITY_TOL = 1e-9


class GeometryError(ValueError):
    pass


@lru_cache(maxsize=None)
def gell_mann_basis(n: int) -> np.ndarray:
    """Generalized Gell-Mann matrices, shape (n^2 - 1, n, n).

    Order: symmetric (j < k), antisymmetric (j < k), then diagonal; for n = 2
    this is (X, Y, Z).
    """
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[j, k] = m[k, j] = 1
            mats.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[j, k] = -1j
            m[k, j] = 1j
            mats.append(m)
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1
        d[l] = -l
        mats.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * d).astype(np.complex128))
    out = np.array(mats).reshape(len(mats), n, n)
    out.setflags(write=False)
    return out


def embed_many(mats: np.ndarray, tol: TolerancePolicy = DEFAULT_TOLERANCE, check: bool = True) -> np.ndarray:
    """Embed a stack of unit-trace Hermitian matrices; returns shape (m, n^2 - 1)."""
    mats = np.asarray(mats, dtype=np.complex128)
    n = mats.shape[-1]
    if check:
        for a in mats:
            if not tol.within(hermitian_deviation(a)):
                raise GeometryError("input is not Hermitian")
            if not tol.within(abs(np.trace(a) - 1.0)):
                raise GeometryError(f"input has trace {np.trace(a)!r}, expected 1")
    g = gell_mann_basis(n)
    # Tr(A g_i) = sum_ab A_ab g_i,ba
    return 0.5 * np.einsum("mab,iba->mi", mats, g).real


def embed(p, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> np.ndarray:
    return embed_many(np.asarray(p)[None], tol)[0]


def centered_inner(a, b) -> float:
    """(Tr(AB) - 1/N) / 2 computed from the matrices."""
    a = np.asarray(a)
    return 0.5 * (float(np.trace(a @ np.asarray(b)).real) - 1.0 / a.shape[0])


def trace_distance_sq(a, b) -> float:
    d = np.asarray(a) - np.asarray(b)
    return 0.5 * float(np.trace(d @ d).real)


@dataclass(frozen=True, eq=False)
class ComplementarityPolytope:
    dim: int
    vertices: np.ndarray  # shape (N + 1, N, N^2 - 1): vertices[j, k] = embed(P_k^j)

    @property
    def flat_vertices(self) -> np.ndarray:
        return self.vertices.reshape(-1, self.vertices.shape[-1])

    def simplex(self, j: int) -> np.ndarray:
        return self.vertices[j]


def build_polytope(s: MubSet, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ComplementarityPolytope:
    if s.size != s.dim + 1:
        raise GeometryError(f"polytope needs a complete set of {s.dim + 1} bases, got {s.size}")
    if not verify_mub_set(s, tol).complete:
        raise GeometryError("MUB set failed verification")
    verts = np.array([embed_many(b.projectors, tol) for b in s.bases])
    verts.setflags(write=False)
    return ComplementarityPolytope(s.dim, verts)


@dataclass(frozen=True)
class PolytopeReport:
    simplex_distance_deviation: float
    cross_inner_max: float
    radius_deviation: float

    def as_checks(self, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list[dict]:
        return [
            {"name": "p_simplex_regular", "max_deviation": self.simplex_distance_deviation,
             "pass": tol.within(self.simplex_distance_deviation)},
            {"name": "p_simplex_orthogonal", "max_deviation": self.cross_inner_max,
             "pass": tol.within(self.cross_inner_max)},
            {"name": "outsphere_radius", "max_deviation": self.radius_deviation,
             "pass": tol.within(self.radius_deviation)},
        ]


def pairwise_sq_distances(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def polytope_report(p: ComplementarityPolytope) -> PolytopeReport:
    n = p.dim
    simplex_dev = 0.0
    for j in range(n + 1):
        d2 = pairwise_sq_distances(p.vertices[j])
        off = ~np.eye(n, dtype=bool)
        simplex_dev = max(simplex_dev, float(np.max(np.abs(np.sqrt(d2[off]) - 1.0), initial=0.0)))
    cross = 0.0
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            cross = max(cross, float(np.max(np.abs(p.vertices[i] @ p.vertices[j].T))))
    radius = np.sqrt(0.5 * (1.0 - 1.0 / n))
    rdev = float(np.max(np.abs(np.linalg.norm(p.flat_vertices, axis=1) - radius)))
    return PolytopeReport(simplex_dev, cross, rdev)


@dataclass(frozen=True)
class FacetSelection:
    """One omitted vertex index per P-simplex."""

    omitted: tuple[int, ...]

    def included(self, n: int) -> list[tuple[int, int]]:
        return [(j, k) for j, o in enumerate(self.omitted) for k in range(n) if k != o]

    def shared_vertices(self, other: "FacetSelection", n: int) -> int:
        return len(set(self.included(n)) & set(other.included(n)))


def enumerate_candidate_facets(p: ComplementarityPolytope) -> list[FacetSelection]:
    n = p.dim
    return [FacetSelection(t) for t in itertools.product(range(n), repeat=n + 1)]


def facet_center(p: ComplementarityPolytope, f: FacetSelection) -> np.ndarray:
    """Arithmetic mean of the N^2 - 1 included vertices."""
    n = p.dim
    if len(f.omitted) != n + 1 or not all(0 <= o < n for o in f.omitted):
        raise GeometryError(f"invalid facet selection {f.omitted} for N = {n}")
    pts = np.array([p.vertices[j, k] for j, k in f.included(n)])
    return pts.mean(axis=0)


@dataclass(frozen=True)
class SimplexReport:
    count: int
    min_distance: float
    max_distance: float
    spread: float
    centroid_norm: float
    passed: bool


def verify_regular_simplex(
    points,
    spread_tol: float = REGULARITY_TOL,
    centroid_tol: float = DEFAULT_TOLERANCE.abs_tol,
    expected: int | None = None,
) -> SimplexReport:
    """Equal pairwise distances (max - min <= spread_tol) and centroid at the origin."""
    pts = np.asarray(points, dtype=np.float64)
    if expected is not None and len(pts) != expected:
        raise GeometryError(f"expected {expected} points, got {len(pts)}")
    if len(pts) < 2:
        raise GeometryError("need at least two points")
    d = np.sqrt(pairwise_sq_distances(pts)[np.triu_indices(len(pts), 1)])
    spread = float(d.max() - d.min())
    cnorm = float(np.linalg.norm(pts.mean(axis=0)))
    return SimplexReport(len(pts), float(d.min()), float(d.max()), spread, cnorm,
                         spread <= spread_tol and cnorm <= centroid_tol)


@dataclass(frozen=True)
class InscribedSimplex:
    selections: list[FacetSelection]
    centers: np.ndarray
    report: SimplexReport
    single_agreement: bool

    @property
    def regular(self) -> bool:
        return self.report.passed


def agreement_counts(selections: list[FacetSelection]) -> np.ndarray:
    """Number of coordinates in which each distinct pair of omission tuples agrees."""
    t = np.array([s.omitted for s in selections])
    agree = (t[:, None, :] == t[None, :, :]).sum(axis=-1)
    return agree[np.triu_indices(len(t), 1)]


def inscribed_simplex_from_selections(
    p: ComplementarityPolytope,
    selections: list[FacetSelection],
    spread_tol: float = REGULARITY_TOL,
    centroid_tol: float = DEFAULT_TOLERANCE.abs_tol,
) -> InscribedSimplex:
    centers = np.array([facet_center(p, f) for f in selections])
    report = verify_regular_simplex(centers, spread_tol, centroid_tol)
    single = bool(np.all(agreement_counts(selections) == 1))
    return InscribedSimplex(selections, centers, report, single)


def inscribed_simplex_from_mols(
    p: ComplementarityPolytope,
    m: MolsSet,
    spread_tol: float = REGULARITY_TOL,
    centroid_tol: float = DEFAULT_TOLERANCE.abs_tol,
) -> InscribedSimplex:
    """Facet centers selected by the affine plane of a complete MOLS set.

    Plane point (x, y) omits vertex x of P-simplex 0, vertex y of P-simplex 1
    and vertex L_j(x, y) of P-simplex j + 1.
    """
    if m.order != p.dim:
        raise GeometryError(f"MOLS order {m.order} does not match dimension {p.dim}")
    plane = affine_plane(m)
    sels = [FacetSelection(plane.omission_tuple(pt)) for pt in range(plane.points)]
    return inscribed_simplex_from_selections(p, sels, spread_tol, centroid_tol)


def points_csv(points) -> str:
    """One point per row, columns x0 .. x{d-1}."""
    pts = np.asarray(points, dtype=np.float64)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i}" for i in range(pts.shape[1])])
    for row in pts:
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()
