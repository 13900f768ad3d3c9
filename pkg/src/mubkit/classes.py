"""Commuting classes of unitary A-operators built from MUB bases.

For a basis with projectors P_1 .. P_N the class is
A_t = sum_k exp(2 pi i t k / N) P_k, t = 0 .. N-1 (k runs from 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mubkit.mub import Basis, MubSet, verify_basis
from mubkit.numerics import (
    DEFAULT_TOLERANCE,
    TolerancePolicy,
    commutator_norm,
    max_abs,
    numerical_rank,
    unitary_deviation,
)


class ClassError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CommutingClass:
    dim: int
    basis_index: int
    operators: np.ndarray  # shape (N, N, N); operators[t] = A_{j,t}

    def __getitem__(self, t: int) -> np.ndarray:
        return self.operators[t]


def build_class(b: Basis, basis_index: int = 0, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> CommutingClass:
    if not verify_basis(b, tol).passed:
        raise ClassError("input is not an orthonormal basis")
    n = b.dim
    t = np.arange(n)[:, None]
    k = np.arange(1, n + 1)[None, :]
    phases = np.exp(2j * np.pi * t * k / n)
    ops = np.einsum("tk,kij->tij", phases, b.projectors)
    ops.setflags(write=False)
    return CommutingClass(n, basis_index, ops)


def build_classes(s: MubSet, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list[CommutingClass]:
    return [build_class(b, j, tol) for j, b in enumerate(s.bases)]


def gram(ops_a: np.ndarray, ops_b: np.ndarray) -> np.ndarray:
    """``G[t, s] = Tr(A_t^dagger B_s)`` for stacks of matrices."""
    n_a = ops_a.shape[0]
    n_b = ops_b.shape[0]
    return ops_a.reshape(n_a, -1).conj() @ ops_b.reshape(n_b, -1).T


@dataclass(frozen=True)
class ClassReport:
    identity_deviation: float
    unitarity: float
    trace: float
    commutator: float
    gram: np.ndarray
    gram_deviation: float
    passed: bool

    def as_checks(self) -> list[dict]:
        return [
            {"name": "identity_A0", "max_deviation": self.identity_deviation},
            {"name": "unitarity", "max_deviation": self.unitarity},
            {"name": "traceless", "max_deviation": self.trace},
            {"name": "commutators", "max_deviation": self.commutator},
            {"name": "intra_gram", "max_deviation": self.gram_deviation},
        ]


def verify_class(c: CommutingClass, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ClassReport:
    ops = c.operators
    n = c.dim
    ident = max_abs(ops[0] - np.eye(n))
    unit = max(unitary_deviation(a) for a in ops)
    trace = max((abs(np.trace(a)) for a in ops[1:]), default=0.0)
    comm = max(
        (commutator_norm(ops[t], ops[s]) for t in range(n) for s in range(t + 1, n)),
        default=0.0,
    )
    g = gram(ops, ops)
    gdev = max_abs(g - n * np.eye(n))
    ok = all(tol.within(x) for x in (ident, unit, trace, comm)) and tol.within(gdev, n)
    return ClassReport(ident, unit, trace, comm, g, gdev, ok)


@dataclass(frozen=True)
class CrossReport:
    max_inner: float
    pairs: dict[tuple[int, int], float]
    passed: bool


def verify_cross_orthogonality(classes: list[CommutingClass], tol: TolerancePolicy = DEFAULT_TOLERANCE) -> CrossReport:
    """Max |Tr(A_{i,t}^dagger A_{j,s})| over i != j and t, s >= 1."""
    dims = {c.dim for c in classes}
    if len(dims) > 1:
        raise ClassError(f"classes of mixed dimensions {sorted(dims)}")
    pairs = {}
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            g = gram(classes[i].operators[1:], classes[j].operators[1:])
            pairs[(i, j)] = max_abs(g)
    worst = max(pairs.values(), default=0.0)
    return CrossReport(worst, pairs, tol.within(worst))


def abasis_operators(classes: list[CommutingClass]) -> np.ndarray:
    """The shared identity followed by every non-identity A-operator, class by class."""
    n = classes[0].dim
    parts = [np.eye(n, dtype=np.complex128)[None]] + [c.operators[1:] for c in classes]
    return np.concatenate(parts)


@dataclass(frozen=True)
class ABasisReport:
    count: int
    rank: int
    gram_deviation: float
    passed: bool


def verify_abasis(classes: list[CommutingClass], tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ABasisReport:
    """Orthogonality (Gram = N I) and spanning (rank N^2) of {I} + non-identity A-operators."""
    n = classes[0].dim
    ops = abasis_operators(classes)
    g = gram(ops, ops)
    dev = max_abs(g - n * np.eye(len(ops)))
    rank = numerical_rank(g, n * tol.abs_tol)
    ok = tol.within(dev, n) and rank == n * n and len(ops) == n * n
    return ABasisReport(len(ops), rank, dev, ok)


def verify_masa_span(b: Basis, c: CommutingClass, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """Span(P_1..P_N) == Span(A_0..A_{N-1}): the 2N-family has rank N."""
    n = b.dim
    family = np.concatenate([b.projectors, c.operators])
    rank = numerical_rank(gram(family, family), n * tol.abs_tol)
    return rank == n


def group_law_deviation(c: CommutingClass) -> float:
    """Max over t, s of |A_t A_s - A_{(t+s) mod N}|."""
    ops = c.operators
    n = c.dim
    dev = 0.0
    for t in range(n):
        prods = np.einsum("ij,sjk->sik", ops[t], ops)
        target = ops[(t + np.arange(n)) % n]
        dev = max(dev, max_abs(prods - target))
    return dev


def adjoint_deviation(c: CommutingClass) -> float:
    """Max over t of |A_t^dagger - A_{(N-t) mod N}|."""
    n = c.dim
    ops = c.operators
    return max(max_abs(ops[t].conj().T - ops[(n - t) % n]) for t in range(n))
