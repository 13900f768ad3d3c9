import json
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_set
from mubkit import mub
from mubkit.numerics import DEFAULT_TOLERANCE, random_unitary

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tools"))
import even_mub_tables  # noqa: E402


def shift_clock(p):
    x = np.roll(np.eye(p), 1, axis=0)  # X|k> = |k+1>
    z = np.diag(np.exp(2j * np.pi * np.arange(p) / p))
    return x, z


def same_basis(a: mub.Basis, b: mub.Basis) -> bool:
    o = mub.overlap_matrix(a, b)
    return np.allclose(np.sort(o, axis=1)[:, -1], 1.0, atol=1e-10)


def same_set_of_bases(s: mub.MubSet, t: mub.MubSet) -> bool:
    return s.size == t.size and all(any(same_basis(a, b) for b in t.bases) for a in s.bases)


def test_z_x_bases_unbiased():
    z = mub.computational_basis(2)
    x = mub.Basis(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    r = mub.verify_unbiased(z, x)
    assert r.max_deviation < 1e-15
    assert r.passed
    assert not mub.verify_unbiased(z, z).passed
    assert mub.verify_unbiased(z, z).max_deviation == pytest.approx(0.5)


def test_dimension_mismatch():
    with pytest.raises(mub.MubError):
        mub.verify_unbiased(mub.computational_basis(2), mub.computational_basis(3))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_prime_bases_are_pauli_eigenbases(p):
    s = mub.construct_prime(p)
    x, z = shift_clock(p)
    assert s.size == p + 1
    assert np.allclose(s.bases[0].vectors, np.eye(p))
    for r in range(p):
        op = x @ np.linalg.matrix_power(z, r)
        for v in s.bases[r + 1].vectors:
            lam = np.vdot(v, op @ v)
            assert np.linalg.norm(op @ v - lam * v) < 1e-12
    assert mub.verify_mub_set(s).complete


def test_dim2_is_z_x_xz():
    s = mub.construct_prime(2)
    x, z = shift_clock(2)
    for b, op in zip(s.bases, [z, x, x @ z]):
        for v in b.vectors:
            assert abs(abs(np.vdot(v, op @ v)) - 1.0) < 1e-12


def test_dim3_fourier_pair():
    s = mub.construct_prime(3)
    assert mub.verify_unbiased(s.bases[0], s.bases[1]).max_deviation < 1e-12


def test_prime_errors():
    with pytest.raises(mub.MubError):
        mub.construct_prime(9)
    with pytest.raises(mub.MubError):
        mub.construct_prime(17)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13])
def test_prime_power_complete(q):
    s = mub.construct_prime_power(q)
    r = mub.verify_mub_set(s)
    assert s.size == q + 1
    assert r.complete
    assert r.max_unbiased < 1e-10


@pytest.mark.parametrize("q", [6, 10, 16, 12])
def test_prime_power_errors(q):
    with pytest.raises(mub.MubError):
        mub.construct_prime_power(q)


def test_construct_dim6_unavailable():
    with pytest.raises(mub.MubError, match="no construction available"):
        mub.construct(6)


def test_q3_agrees_with_prime_construction():
    assert same_set_of_bases(mub.construct_prime_power(3), mub.construct_prime(3))
    assert same_set_of_bases(mub.construct_prime_power(5), mub.construct_prime(5))


@pytest.mark.parametrize("k", [2, 3])
def test_even_tables_match_fresh_generation(k):
    q = 2**k
    fresh = mub.MubSet(q, (mub.computational_basis(q),) + tuple(mub.Basis(b) for b in even_mub_tables.pauli_partition_bases(k, seed=123)))
    assert mub.verify_mub_set(fresh).complete
    assert same_set_of_bases(mub.construct_prime_power(q), fresh)


def test_subset_is_not_complete():
    s = complete_set(3).subset([0, 1])
    r = mub.verify_mub_set(s)
    assert r.passed and not r.complete


def test_perturbed_projector_fails():
    s = complete_set(3)
    vecs = s.bases[1].vectors.copy()
    eps = 1e-3
    vecs[0] = vecs[0] + eps * np.array([1, -1, 0])
    bad = mub.MubSet(3, (s.bases[0], mub.Basis(vecs)) + s.bases[2:])
    r = mub.verify_mub_set(bad)
    assert not r.passed
    worst = max(r.max_unbiased, r.max_orthonormality)
    assert eps / 10 < worst < eps * 10


def test_resolution_of_identity():
    for n in (2, 3, 4, 5, 7, 8, 9):
        for b in complete_set(n).bases:
            assert np.max(np.abs(b.projectors.sum(axis=0) - np.eye(n))) < DEFAULT_TOLERANCE.abs_tol


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(0, 2**32 - 1))
def test_unbiasedness_symmetric_exactly(n, seed):
    s = complete_set(n).conjugated(random_unitary(n, np.random.default_rng(seed)))
    for i in range(s.size):
        for j in range(s.size):
            assert mub.verify_unbiased(s.bases[i], s.bases[j]).max_deviation == mub.verify_unbiased(s.bases[j], s.bases[i]).max_deviation


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(0, 2**32 - 1))
def test_unitary_invariance(n, seed):
    s = complete_set(n)
    t = s.conjugated(random_unitary(n, np.random.default_rng(seed)))
    r, rt = mub.verify_mub_set(s), mub.verify_mub_set(t)
    assert r.complete == rt.complete
    assert rt.max_unbiased <= 10 * DEFAULT_TOLERANCE.abs_tol
    assert rt.max_orthonormality <= 10 * DEFAULT_TOLERANCE.abs_tol


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 8, 9])
def test_serialization_round_trip(n, tmp_path):
    s = complete_set(n)
    text = mub.dumps(s)
    back = mub.loads(text, strict=True)
    assert mub.dumps(back) == text
    for a, b in zip(s.bases, back.bases):
        assert np.array_equal(a.vectors, b.vectors)
    mub.save(s, tmp_path / "m.json")
    assert (tmp_path / "m.json").read_text() == text


def test_loader_schema():
    doc = json.loads(mub.dumps(complete_set(2)))
    assert doc["dim"] == 2
    assert len(doc["bases"]) == 3
    assert np.array(doc["bases"]).shape == (3, 2, 2, 2)


def test_loader_rejects_bad_documents():
    with pytest.raises(mub.MubError):
        mub.loads("{not json")
    with pytest.raises(mub.MubError):
        mub.loads(json.dumps({"dim": 2}))
    with pytest.raises(mub.MubError):
        mub.loads(json.dumps({"dim": 2, "bases": [[[[1, 0]]]]}))


def test_strict_loader_rejects_failed_verification():
    doc = json.loads(mub.dumps(complete_set(2)))
    doc["bases"][1] = doc["bases"][0]
    text = json.dumps(doc)
    assert not mub.verify_mub_set(mub.loads(text)).passed
    with pytest.raises(mub.MubError):
        mub.loads(text, strict=True)
