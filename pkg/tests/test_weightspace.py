import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semihilbert import (
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    ZeroWeight,
    make_weight,
)

from conftest import random_weight


def test_diag_weight_spectral_data():
    w = make_weight(np.diag([1.0, 2.0]))
    assert w.rank == 2
    np.testing.assert_allclose(w.d, [2.0, 1.0])
    np.testing.assert_allclose(np.abs(w.range_basis), np.eye(2)[:, ::-1], atol=1e-14)


def test_projection_weight():
    w = make_weight(np.diag([1.0, 1.0, 0.0]))
    assert w.rank == 2
    np.testing.assert_allclose(w.proj_range, np.diag([1.0, 1.0, 0.0]), atol=1e-14)


def test_rank_one_ones_matrix():
    # hand eigendecomposition: [[1,1],[1,1]] = 2 * vv^H with v = (1,1)/sqrt(2)
    w = make_weight(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert w.rank == 1
    np.testing.assert_allclose(w.eigvals, [2.0, 0.0], atol=1e-12)
    v = w.range_basis[:, 0]
    np.testing.assert_allclose(np.abs(v), [1 / math.sqrt(2)] * 2, atol=1e-12)
    rebuilt = (w.range_basis * w.d) @ w.range_basis.conj().T
    np.testing.assert_allclose(rebuilt, w.matrix, atol=1e-12)


def test_derived_matrices_are_consistent():
    rng = np.random.default_rng(0)
    w = random_weight(5, 3, rng)
    np.testing.assert_allclose(w.sqrt_a @ w.sqrt_a, w.matrix, atol=1e-9)
    np.testing.assert_allclose(w.pinv_a @ w.matrix @ w.pinv_a, w.pinv_a, atol=1e-9)
    np.testing.assert_allclose(w.proj_range @ w.proj_range, w.proj_range, atol=1e-12)
    np.testing.assert_allclose(
        w.proj_range, w.range_basis @ w.range_basis.conj().T, atol=1e-12)


def test_validation_errors():
    with pytest.raises(NotHermitian):
        make_weight(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(NotPSD):
        make_weight(np.diag([1.0, -1.0]))
    with pytest.raises(ZeroWeight):
        make_weight(np.zeros((2, 2)))
    with pytest.raises(NotPSD):
        make_weight(-np.eye(2))
    with pytest.raises(DimensionMismatch):
        make_weight(np.ones((2, 3)))


def test_semi_inner_examples():
    w = make_weight(np.diag([1.0, 2.0]))
    assert w.semi_inner([1, 0], [0, 1]) == pytest.approx(0.0)
    assert w.semi_inner([1, 1], [1, 1]) == pytest.approx(3.0)
    wp = make_weight(np.diag([1.0, 1.0, 0.0]))
    assert wp.semi_inner([0, 0, 5], [1, 2, 3]) == pytest.approx(0.0)


def test_semi_inner_convention():
    # linear in the first argument, conjugate-linear in the second
    w = make_weight(np.diag([1.0, 2.0]))
    x = np.array([1.0 + 1j, 2.0])
    y = np.array([0.5, -1j])
    c = 0.7 - 0.3j
    assert w.semi_inner(c * x, y) == pytest.approx(c * w.semi_inner(x, y))
    assert w.semi_inner(x, c * y) == pytest.approx(
        np.conj(c) * w.semi_inner(x, y))


def test_semi_norm_examples():
    w = make_weight(np.diag([1.0, 2.0]))
    assert w.semi_norm([1, 1]) == pytest.approx(math.sqrt(3.0))
    wp = make_weight(np.diag([1.0, 1.0, 0.0]))
    assert wp.semi_norm([3.0, 4.0, 99.0]) == pytest.approx(5.0)
    wi = make_weight(np.eye(3))
    v = np.array([1.0, 2.0, 2.0])
    assert wi.semi_norm(v) == pytest.approx(np.linalg.norm(v))


def test_null_vector_has_zero_seminorm():
    wp = make_weight(np.diag([1.0, 1.0, 0.0]))
    assert wp.semi_norm([0.0, 0.0, 7.0]) == 0.0


def test_a_unit_sample_determinism_and_support():
    w = make_weight(np.diag([1.0, 1.0, 0.0]))
    xs1 = w.a_unit_sample(8, seed=42)
    xs2 = w.a_unit_sample(8, seed=42)
    np.testing.assert_array_equal(xs1, xs2)
    for x in xs1:
        assert w.semi_norm(x) == pytest.approx(1.0, abs=1e-12)
        assert abs(x[2]) < 1e-14  # stays in the range of the weight
    w4 = make_weight(np.diag([4.0]))
    x = w4.a_unit_sample(1, seed=0)[0]
    assert abs(x[0]) == pytest.approx(0.5)


def test_reduce_lift_roundtrip():
    rng = np.random.default_rng(3)
    w = random_weight(4, 2, rng)
    u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    u /= np.linalg.norm(u)
    x = w.lift_vector(u)
    np.testing.assert_allclose(w.reduce_vector(x), u, atol=1e-10)
    assert w.semi_norm(x) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 31 - 1), st.integers(2, 5))
def test_cauchy_schwarz_and_isometry(seed, n):
    rng = np.random.default_rng(seed)
    w = random_weight(n, int(rng.integers(1, n + 1)), rng)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lhs = abs(w.semi_inner(x, y))
    rhs = w.semi_norm(x) * w.semi_norm(y)
    assert lhs <= rhs * (1 + 1e-10) + 1e-12
    # seminorm equals both the quadratic-form route and the reduced route
    direct = math.sqrt(max(w.semi_inner(x, x).real, 0.0))
    assert direct == pytest.approx(w.semi_norm(x), rel=1e-9, abs=1e-12)
    assert np.linalg.norm(w.reduce_vector(x)) == pytest.approx(
        w.semi_norm(x), rel=1e-12, abs=1e-15)


def test_reconstruction_idempotent():
    rng = np.random.default_rng(11)
    w = random_weight(5, 3, rng)
    w2 = make_weight((w.range_basis * w.d) @ w.range_basis.conj().T,
                     rank_tol=w.rank_tol)
    assert w2.rank == w.rank
    for _ in range(5):
        x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert w2.semi_norm(x) == pytest.approx(w.semi_norm(x), rel=1e-9,
                                                abs=1e-12)
