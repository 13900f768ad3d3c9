"""Complete sets of mutually unbiased bases: construction, verification, I/O.

A basis is kept both as its (normalized) state vectors and as the rank-one
projectors built from them; all checks run on overlaps Tr(P_s Q_t).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from mubkit import gf as _gf
from mubkit.numerics import (
    DEFAULT_TOLERANCE,
    TolerancePolicy,
    max_abs,
    projector_deviation,
)

DEFAULT_MAX_PRIME = 13
MAX_PRIME_POWER = 16
_NORM_SLACK = 1e-14


class MubError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal basis of C^N; ``vectors[k]`` is the k-th state."""

    vectors: np.ndarray
    projectors: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.complex128)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise MubError(f"basis needs N vectors of length N, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise MubError("basis vectors have non-finite entries")
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms == 0):
            raise MubError("zero vector in basis")
        if np.any(np.abs(norms - 1.0) > _NORM_SLACK):
            v = v / norms[:, None]
        v.setflags(write=False)
        p = np.einsum("ki,kj->kij", v, v.conj())
        p.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "projectors", p)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def conjugated(self, u: np.ndarray) -> "Basis":
        """The basis U|v_k>, i.e. projectors U P_k U^dagger."""
        return Basis(self.vectors @ np.asarray(u).T)


@dataclass(frozen=True, eq=False)
class MubSet:
    dim: int
    bases: tuple[Basis, ...]

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))
        for b in self.bases:
            if b.dim != self.dim:
                raise MubError(f"basis of dim {b.dim} in a dim-{self.dim} set")

    @property
    def size(self) -> int:
        return len(self.bases)

    @property
    def is_full_size(self) -> bool:
        return self.size == self.dim + 1

    def subset(self, indices) -> "MubSet":
        return MubSet(self.dim, tuple(self.bases[i] for i in indices))

    def conjugated(self, u: np.ndarray) -> "MubSet":
        return MubSet(self.dim, tuple(b.conjugated(u) for b in self.bases))


# -- verification ---------------------------------------------------------


def overlap_matrix(a: Basis, b: Basis) -> np.ndarray:
    """``O[s, t] = Tr(P_s Q_t) = |<a_s|b_t>|^2``."""
    if a.dim != b.dim:
        raise MubError(f"dimension mismatch: {a.dim} vs {b.dim}")
    amp = (a.vectors.conj()[:, None, :] * b.vectors[None, :, :]).sum(axis=-1)
    return np.abs(amp) ** 2


@dataclass(frozen=True)
class UnbiasedReport:
    max_deviation: float
    passed: bool


def verify_unbiased(a: Basis, b: Basis, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> UnbiasedReport:
    n = a.dim
    # both orientations so the result is exactly symmetric in (a, b)
    dev = max(
        max_abs(overlap_matrix(a, b) - 1.0 / n),
        max_abs(overlap_matrix(b, a) - 1.0 / n),
    )
    return UnbiasedReport(dev, tol.within(dev))


@dataclass(frozen=True)
class BasisReport:
    orthonormality: float
    resolution: float
    projector: float
    passed: bool


@dataclass(frozen=True)
class MubSetReport:
    dim: int
    size: int
    bases: list[BasisReport]
    pairs: dict[tuple[int, int], float]
    max_orthonormality: float
    max_unbiased: float
    passed: bool
    complete: bool

    def as_checks(self) -> list[dict]:
        return [
            {"name": "basis_count", "count": self.size, "pass": self.size <= self.dim + 1},
            {
                "name": "orthonormality",
                "max_deviation": self.max_orthonormality,
                "pass": all(b.passed for b in self.bases),
            },
            {
                "name": "unbiasedness",
                "max_deviation": self.max_unbiased,
                "pass": self.passed and self.size <= self.dim + 1,
            },
            {"name": "complete", "count": self.size, "pass": self.complete},
        ]


def verify_basis(b: Basis, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> BasisReport:
    n = b.dim
    ortho = max_abs(overlap_matrix(b, b) - np.eye(n))
    resolution = max_abs(b.projectors.sum(axis=0) - np.eye(n))
    proj = max(projector_deviation(p) for p in b.projectors)
    return BasisReport(ortho, resolution, proj, tol.within(max(ortho, resolution, proj)))


def verify_mub_set(s: MubSet, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> MubSetReport:
    basis_reports = [verify_basis(b, tol) for b in s.bases]
    pairs = {}
    for i in range(s.size):
        for j in range(i + 1, s.size):
            pairs[(i, j)] = verify_unbiased(s.bases[i], s.bases[j], tol).max_deviation
    max_ortho = max((max(r.orthonormality, r.resolution, r.projector) for r in basis_reports), default=0.0)
    max_unb = max(pairs.values(), default=0.0)
    passed = all(r.passed for r in basis_reports) and tol.within(max_unb)
    complete = passed and s.size == s.dim + 1
    return MubSetReport(s.dim, s.size, basis_reports, pairs, max_ortho, max_unb, passed, complete)


# -- constructions ----------------------------------------------------------


def computational_basis(n: int) -> Basis:
    return Basis(np.eye(n, dtype=np.complex128))


def fourier_basis(n: int) -> Basis:
    x = np.arange(n)
    return Basis(np.exp(2j * np.pi * np.outer(x, x) / n) / np.sqrt(n))


def construct_prime(p: int, max_prime: int = DEFAULT_MAX_PRIME) -> MubSet:
    """Computational basis plus the eigenbases of X Z^r, r = 0 .. p-1.

    The eigenvectors are written in closed form: with
    phi = r (p-1)/2 + s, the s-th eigenvector of X Z^r has components
    exp(2 pi i [r x (x-1)/2 - x phi] / p) / sqrt(p); its eigenvalue is
    exp(2 pi i phi / p).
    """
    if not _gf.is_prime(p):
        raise MubError(f"{p} is not prime")
    if p > max_prime:
        raise MubError(f"prime {p} exceeds configured maximum {max_prime}")
    x = np.arange(p)
    bases = [computational_basis(p)]
    for r in range(p):
        rows = []
        for s in range(p):
            phi = r * (p - 1) / 2 + s
            rows.append(np.exp(2j * np.pi * (r * x * (x - 1) / 2 - x * phi) / p))
        bases.append(Basis(np.array(rows) / np.sqrt(p)))
    return MubSet(p, tuple(bases))


@lru_cache(maxsize=None)
def _even_tables() -> dict:
    raw = resources.files("mubkit.data").joinpath("mub_even.json").read_text()
    return json.loads(raw)


def _from_even_table(q: int, tol: TolerancePolicy) -> MubSet:
    exps = np.array(_even_tables()[str(q)], dtype=np.int64)
    bases = [computational_basis(q)]
    bases += [Basis(1j ** (e % 4) / np.sqrt(q)) for e in exps]
    s = MubSet(q, tuple(bases))
    report = verify_mub_set(s, tol)
    if not report.complete:
        raise MubError(f"embedded table for q={q} failed verification")
    return s


def construct_prime_power(
    q: int,
    tol: TolerancePolicy = DEFAULT_TOLERANCE,
    moduli: dict | None = None,
) -> MubSet:
    """q + 1 bases for a prime power q <= 16.

    Odd q uses the quadratic-phase family
    v_{r,s}(x) = omega_p^{tr(r x^2 + s x)} / sqrt(q) over GF(q); q = 2 falls
    back to the prime construction and q = 4, 8 load verified tables.
    """
    pk = _gf.prime_power(q)
    if pk is None:
        raise MubError(f"{q} is not a prime power")
    if q > MAX_PRIME_POWER:
        raise MubError(f"prime power {q} exceeds limit {MAX_PRIME_POWER}")
    p, _ = pk
    if p == 2:
        if q == 2:
            return construct_prime(2)
        if q in (4, 8):
            return _from_even_table(q, tol)
        raise MubError(f"no construction available for even q={q}")
    field = _gf.galois_field(q, moduli=moduli)
    xs = np.arange(q)
    sq = field.mul_table[xs, xs]
    bases = [computational_basis(q)]
    for r in range(q):
        r_sq = field.mul_table[r, sq]
        rows = []
        for s in range(q):
            arg = field.add_table[r_sq, field.mul_table[s, xs]]
            tr = np.array([field.trace(int(a)) for a in arg])
            rows.append(np.exp(2j * np.pi * tr / p))
        bases.append(Basis(np.array(rows) / np.sqrt(q)))
    return MubSet(q, tuple(bases))


def construct(n: int, tol: TolerancePolicy = DEFAULT_TOLERANCE, moduli: dict | None = None,
              max_prime: int = DEFAULT_MAX_PRIME) -> MubSet:
    """Complete set for dimension n: prime construction when n is prime."""
    if _gf.is_prime(n):
        return construct_prime(n, max_prime=max_prime)
    if _gf.prime_power(n) is None:
        raise MubError(f"no construction available for dimension {n} (not a prime power)")
    return construct_prime_power(n, tol=tol, moduli=moduli)


# -- serialization ------------------------------------------------------------


def to_dict(s: MubSet) -> dict:
    return {
        "dim": s.dim,
        "bases": [
            [[[float(z.real), float(z.imag)] for z in vec] for vec in b.vectors]
            for b in s.bases
        ],
    }


def from_dict(data: dict) -> MubSet:
    try:
        dim = int(data["dim"])
        raw = data["bases"]
        bases = []
        for b in raw:
            arr = np.array(b, dtype=np.float64)
            if arr.shape != (dim, dim, 2):
                raise MubError(f"basis entry has shape {arr.shape}, expected {(dim, dim, 2)}")
            bases.append(Basis(arr[..., 0] + 1j * arr[..., 1]))
    except (KeyError, TypeError) as exc:
        raise MubError(f"malformed MUB document: {exc}") from exc
    return MubSet(dim, tuple(bases))


def dumps(s: MubSet) -> str:
    return json.dumps(to_dict(s), separators=(",", ":")) + "\n"


def loads(text: str, tol: TolerancePolicy = DEFAULT_TOLERANCE, strict: bool = False) -> MubSet:
    """Parse a MUB document and re-verify it.

    With ``strict`` a failed verification raises MubError; otherwise the set is
    returned as-is for the caller to report on.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MubError(f"not valid JSON: {exc}") from exc
    s = from_dict(data)
    if strict and not verify_mub_set(s, tol).passed:
        raise MubError("MUB document failed verification on load")
    return s


def save(s: MubSet, path) -> None:
    Path(path).write_text(dumps(s))


def load(path, tol: TolerancePolicy = DEFAULT_TOLERANCE, strict: bool = False) -> MubSet:
    return loads(Path(path).read_text(), tol=tol, strict=strict)
