import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubkit import moment

gaussian_ints = st.builds(complex, st.integers(-50, 50), st.integers(-50, 50))


def test_cp2_fixed_points():
    imgs = moment.fixed_point_images_exact(3)
    assert imgs == [
        (Fraction(1, 2), 0, 0),
        (0, Fraction(1, 2), 0),
        (0, 0, Fraction(1, 2)),
    ]
    assert {moment.chart(x) for x in imgs} == {(0, 0), (0, Fraction(1, 2)), (Fraction(1, 2), 0)}


def test_moment_examples():
    assert np.array_equal(moment.moment_map([1, 0, 0]), [0.5, 0, 0])
    assert np.array_equal(moment.moment_map([0, 1, 0]), [0, 0.5, 0])
    assert np.array_equal(moment.moment_map([1, 1]), [0.25, 0.25])
    assert moment.moment_map_exact([1, 1j]) == (Fraction(1, 4), Fraction(1, 4))


def test_zero_vector_rejected():
    with pytest.raises(moment.MomentError):
        moment.moment_map([0, 0])
    with pytest.raises(moment.MomentError):
        moment.moment_map_exact([0, 0j])


@pytest.mark.parametrize("d", [3, 4, 9])
def test_fixed_points_form_regular_simplex(d):
    imgs = moment.fixed_point_images(d)
    assert np.array_equal(imgs, 0.5 * np.eye(d))
    dist = [np.linalg.norm(a - b) for a, b in itertools.combinations(imgs, 2)]
    assert np.allclose(dist, np.sqrt(2) / 2, rtol=0, atol=1e-15)


def test_fixed_points_need_d2():
    with pytest.raises(moment.MomentError):
        moment.fixed_point_images(1)


def test_p1_simplices_dim2():
    sc = moment.canonical_coordinates(2)
    assert [sorted(b) for b in sc.blocks] == [[0, 1], [0, 2], [0, 3]]
    simplices = moment.p1_simplices(sc)
    e0 = moment.vertex(0, 4)
    assert all(e0 in s and len(s) == 2 for s in simplices)
    assert set.union(*simplices) == {moment.vertex(i, 4) for i in range(4)}
    assert set.intersection(*simplices) == {e0}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_decomposition(n):
    r = moment.verify_decomposition(moment.canonical_coordinates(n), n)
    assert r.passed
    assert r.shared_vertices == (moment.vertex(0, n * n),)


def test_overlapping_blocks_fail_coincidence():
    blocks = (frozenset({0, 1, 2}), frozenset({0, 2, 3}), frozenset({0, 5, 6}), frozenset({0, 7, 8}))
    r = moment.verify_decomposition(moment.SubspaceCoordinates(blocks), 3)
    assert not r.coincidence_ok


def test_block_without_zero_fails_shared_vertex():
    blocks = (frozenset({0, 1, 2}), frozenset({3, 4, 7}), frozenset({0, 5, 6}), frozenset({0, 7, 8}))
    r = moment.verify_decomposition(moment.SubspaceCoordinates(blocks), 3)
    assert not r.shared_vertex_ok


def test_malformed_blocks():
    with pytest.raises(moment.MomentError):
        moment.verify_decomposition(moment.canonical_coordinates(2), 3)
    with pytest.raises(moment.MomentError):
        moment.verify_decomposition(moment.SubspaceCoordinates((frozenset({0, 9}),) * 3), 2)


def test_decomposition_count():
    assert moment.count_shared_vertex_decompositions(2) == 4
    assert moment.count_shared_vertex_decompositions(1) == 1
    with pytest.raises(moment.MomentError):
        moment.count_shared_vertex_decompositions(3)


def test_decomposition_count_bruteforce_oracle():
    # all ways to pick 3 edges of K4 pairwise meeting in a single common vertex
    edges = list(itertools.combinations(range(4), 2))
    count = 0
    for trio in itertools.combinations(edges, 3):
        common = set(trio[0]) & set(trio[1]) & set(trio[2])
        if len(common) == 1 and len(set().union(*trio)) == 4:
            count += 1
    assert count == moment.count_shared_vertex_decompositions(2)


@settings(max_examples=200, deadline=None)
@given(st.lists(gaussian_ints, min_size=2, max_size=9).filter(any), gaussian_ints.filter(bool))
def test_scale_invariance_exact(z, lam):
    assert moment.moment_map_exact([lam * c for c in z]) == moment.moment_map_exact(z)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_normalization_and_convexity(d, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    mu = moment.moment_map(z)
    assert np.all(mu >= 0)
    assert mu.sum() == pytest.approx(0.5, abs=1e-15)
    lam = complex(*rng.standard_normal(2))
    assert np.allclose(moment.moment_map(lam * z), mu, rtol=0, atol=1e-15)
    w = moment.barycentric(mu, d)
    assert np.all(w >= -1e-12)
    assert w.sum() == pytest.approx(1.0)
    assert np.allclose(w @ moment.fixed_point_images(d), mu)


def test_images_csv():
    text = moment.images_csv(moment.fixed_point_images(3))
    assert text.splitlines() == ["mu0,mu1,mu2", "0.5,0.0,0.0", "0.0,0.5,0.0", "0.0,0.0,0.5"]
