import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubkit.numerics import (
    DEFAULT_TOLERANCE,
    TolerancePolicy,
    as_matrix,
    frobenius_inner,
    is_projector_rank_one,
    is_unitary,
    random_unitary,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)


def rand_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_frobenius_examples():
    assert frobenius_inner(np.eye(2), np.eye(2)) == 2
    assert frobenius_inner(np.diag([-1, 1]), np.eye(2)) == 0


def test_frobenius_dimension_mismatch():
    with pytest.raises(ValueError):
        frobenius_inner(np.eye(2), np.eye(3))


def test_unitary_examples():
    assert is_unitary(np.eye(3))
    assert not is_unitary(np.diag([1, 2]))
    assert not is_unitary(np.ones((2, 3)))


def test_projector_examples():
    assert is_projector_rank_one(np.diag([1, 0]))
    assert not is_projector_rank_one(np.eye(2))
    plus = np.array([[1, 1], [1, 1]]) / 2
    # |+><+| squared by hand: [[1/2, 1/2], [1/2, 1/2]]
    assert np.array_equal(plus @ plus, plus)
    assert is_projector_rank_one(plus)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        as_matrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan]])
    m = as_matrix(np.eye(2))
    assert not m.flags.writeable


@pytest.mark.parametrize("abs_tol,rel_tol", [(-1e-3, 0.0), (1.0, 0.0), (0.0, 2.0)])
def test_tolerance_bounds(abs_tol, rel_tol):
    with pytest.raises(ValueError):
        TolerancePolicy(abs_tol, rel_tol)


def test_tolerance_from_env(monkeypatch):
    monkeypatch.setenv("MUBKIT_TOL", "1e-6")
    assert TolerancePolicy.from_env().abs_tol == 1e-6
    monkeypatch.delenv("MUBKIT_TOL")
    assert TolerancePolicy.from_env() == DEFAULT_TOLERANCE


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_self_inner_real_nonnegative(seed, n):
    a = rand_matrix(np.random.default_rng(seed), n)
    v = frobenius_inner(a, a)
    assert abs(v.imag) <= DEFAULT_TOLERANCE.abs_tol
    assert v.real >= -DEFAULT_TOLERANCE.abs_tol


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_conjugate_symmetry_and_linearity(seed, n):
    rng = np.random.default_rng(seed)
    a, b, c = (rand_matrix(rng, n) for _ in range(3))
    alpha, beta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    assert frobenius_inner(a, b) == pytest.approx(np.conj(frobenius_inner(b, a)), abs=1e-12)
    lhs = frobenius_inner(a, alpha * b + beta * c)
    rhs = alpha * frobenius_inner(a, b) + beta * frobenius_inner(a, c)
    assert abs(lhs - rhs) <= DEFAULT_TOLERANCE.abs_tol * max(1.0, abs(rhs))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=9))
def test_unitary_closure(seed, n):
    rng = np.random.default_rng(seed)
    u, v = random_unitary(n, rng), random_unitary(n, rng)
    assert is_unitary(u) and is_unitary(v)
    assert is_unitary(u @ v)
