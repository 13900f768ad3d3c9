"""Dense complex matrix helpers and the shared tolerance policy."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

ENV_TOL = "MUBKIT_TOL"


@dataclass(frozen=True)
class TolerancePolicy:
    """Absolute/relative tolerances used by every floating-point check.

    A deviation ``dev`` measured against a reference magnitude ``ref`` is
    accepted when ``dev <= abs_tol + rel_tol * |ref|``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not (0.0 <= value < 1.0):
                raise ValueError(f"{name} must lie in [0, 1), got {value!r}")

    def within(self, deviation: float, reference: float = 0.0) -> bool:
        return bool(abs(deviation) <= self.abs_tol + self.rel_tol * abs(reference))

    @classmethod
    def from_env(cls, default: "TolerancePolicy | None" = None) -> "TolerancePolicy":
        """Read ``MUBKIT_TOL`` (a single absolute tolerance) if set."""
        base = default or DEFAULT_TOLERANCE
        raw = os.environ.get(ENV_TOL)
        if not raw:
            return base
        return cls(abs_tol=float(raw), rel_tol=base.rel_tol)


DEFAULT_TOLERANCE = TolerancePolicy()


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a read-only square complex128 array.

    Raises ValueError for non-square, empty or non-finite input.
    """
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    m.setflags(write=False)
    return m


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def frobenius_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dagger b)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _check_same_dim(a, b)
    return complex(np.vdot(a, b))


def max_abs(a) -> float:
    """Max-entry norm; 0.0 for empty input."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def unitary_deviation(a) -> float:
    a = np.asarray(a, dtype=np.complex128)
    return max_abs(a.conj().T @ a - np.eye(a.shape[0]))


def is_unitary(a, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return tol.within(unitary_deviation(a))


def hermitian_deviation(a) -> float:
    a = np.asarray(a, dtype=np.complex128)
    return max_abs(a - a.conj().T)


def projector_deviation(a) -> float:
    """Largest of the Hermiticity, idempotency and unit-trace residuals."""
    a = np.asarray(a, dtype=np.complex128)
    return max(
        hermitian_deviation(a),
        max_abs(a @ a - a),
        abs(np.trace(a) - 1.0),
    )


def is_projector_rank_one(a, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return tol.within(projector_deviation(a))


def commutator_norm(a, b) -> float:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return max_abs(a @ b - b @ a)


def numerical_rank(gram: np.ndarray, threshold: float) -> int:
    """Rank of a Hermitian PSD Gram matrix: singular values above ``threshold``."""
    s = np.linalg.svd(np.asarray(gram), compute_uv=False)
    return int(np.sum(s > threshold))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
