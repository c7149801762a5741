import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from entrodyn.errors import (
    BadDimensionError,
    DimMismatchError,
    NotDensityError,
    NotHermitianError,
)
from entrodyn.operators import (
    adjoint,
    assert_density,
    expectation,
    frobenius_norm_sq,
    ginibre_matrix,
    ginibre_state,
    gue_hermitian,
    hermitian_eig,
    is_density,
    is_hermitian,
    maximally_mixed,
    trace_product,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)


def test_adjoint_identity_is_self_adjoint():
    eye = np.identity(2, dtype=complex)
    assert np.array_equal(adjoint(eye), eye)


def test_adjoint_sigma_minus_is_sigma_plus():
    sigma_plus = np.array([[0, 1], [0, 0]], dtype=complex)
    assert np.array_equal(adjoint(SIGMA_MINUS), sigma_plus)


def test_adjoint_entrywise():
    a = ginibre_matrix(3, seed=11)
    dag = adjoint(a)
    for i in range(3):
        for j in range(3):
            assert dag[i, j] == np.conj(a[j, i])


@given(seed=seeds, d=dims)
@settings(deadline=None, max_examples=50)
def test_adjoint_involution(seed, d):
    a = ginibre_matrix(d, seed)
    assert np.array_equal(adjoint(adjoint(a)), a)


def test_frobenius_examples():
    assert frobenius_norm_sq(np.identity(2)) == 2.0
    assert frobenius_norm_sq(np.diag([1.0, -1.0])) == 2.0
    assert frobenius_norm_sq(np.array([[0, 2j], [0, 0]])) == 4.0


@given(seed=seeds, d=dims)
@settings(deadline=None, max_examples=50)
def test_frobenius_adjoint_invariant(seed, d):
    a = ginibre_matrix(d, seed)
    lhs = frobenius_norm_sq(a)
    rhs = frobenius_norm_sq(adjoint(a))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, lhs)


def test_frobenius_matches_trace_form():
    a = ginibre_matrix(4, seed=3)
    assert_allclose(frobenius_norm_sq(a), trace_product(adjoint(a), a).real, rtol=1e-12)


def test_hermitian_eig_diagonal():
    dec = hermitian_eig(np.diag([0.75, 0.25]).astype(complex))
    assert_allclose(dec.eigenvalues, [0.75, 0.25])
    assert_allclose(np.abs(dec.eigenvectors), np.identity(2), atol=1e-12)


def test_hermitian_eig_sigma_x():
    dec = hermitian_eig(SIGMA_X)
    assert_allclose(dec.eigenvalues, [1.0, -1.0], atol=1e-12)


def test_hermitian_eig_rejects_nonhermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


@given(seed=seeds, d=st.integers(min_value=2, max_value=6))
@settings(deadline=None, max_examples=50)
def test_hermitian_eig_invariants(seed, d):
    a = gue_hermitian(d, seed)
    dec = hermitian_eig(a)
    scale = max(1.0, np.linalg.norm(a))
    recon = (dec.eigenvectors * dec.eigenvalues) @ adjoint(dec.eigenvectors)
    assert np.linalg.norm(a - recon) <= 1e-10 * scale
    gram = adjoint(dec.eigenvectors) @ dec.eigenvectors
    assert np.linalg.norm(gram - np.identity(d)) <= 1e-10
    assert np.all(np.diff(dec.eigenvalues) <= 0)  # descending
    # trace equals the eigenvalue sum
    assert abs(np.trace(a).real - dec.eigenvalues.sum()) <= 1e-10 * scale


def test_ginibre_spectrum_is_a_probability_vector():
    dec = hermitian_eig(ginibre_state(4, seed=5))
    assert np.all(dec.eigenvalues >= 0.0)
    assert np.all(dec.eigenvalues <= 1.0)
    assert abs(dec.eigenvalues.sum() - 1.0) <= 1e-10


def test_expectation_examples():
    rho = ginibre_state(3, seed=9)
    assert_allclose(expectation(np.identity(3), rho), 1.0, atol=1e-12)
    assert_allclose(expectation(np.diag([1.0, -1.0]), np.diag([1.0, 0.0])), 1.0)
    plus = np.full((2, 2), 0.5, dtype=complex)
    assert_allclose(expectation(SIGMA_X, plus), 1.0, atol=1e-12)


def test_expectation_dim_mismatch():
    with pytest.raises(DimMismatchError):
        expectation(np.identity(2), ginibre_state(3, seed=0))


def test_expectation_of_hermitian_is_real():
    for i in range(20):
        value = expectation(gue_hermitian(3, seed=i), ginibre_state(3, seed=100 + i))
        assert abs(value.imag) <= 1e-10


@pytest.mark.parametrize("d", [2, 3, 4])
def test_psd_product_trace_inequality(d):
    # tr(AB) <= tr(A) tr(B) for PSD A, B; 100 random pairs per dimension.
    for i in range(100):
        g1 = ginibre_matrix(d, seed=10_000 + 2 * i + d)
        g2 = ginibre_matrix(d, seed=10_001 + 2 * i + d)
        a = g1 @ adjoint(g1)
        b = g2 @ adjoint(g2)
        lhs = trace_product(a, b).real
        rhs = np.trace(a).real * np.trace(b).real
        assert lhs <= rhs + 1e-10


def test_ginibre_state_dimension_one():
    assert_allclose(ginibre_state(1, seed=123), [[1.0]])


def test_ginibre_state_deterministic():
    assert np.array_equal(ginibre_state(3, seed=77), ginibre_state(3, seed=77))


def test_ginibre_state_full_rank_qubit():
    dec = hermitian_eig(ginibre_state(2, seed=42))
    assert np.all(dec.eigenvalues > 0.0)


def test_ginibre_validity_sweep():
    # 1000 seeds across small dimensions, validated at 1e-10.
    seed = 0
    for d in (2, 3, 4):
        for _ in range(334):
            assert is_density(
                ginibre_state(d, seed),
                hermiticity_tol=1e-10,
                positivity_tol=1e-10,
                trace_tol=1e-10,
            )
            seed += 1


def test_gue_hermitian_exact_and_deterministic():
    m = gue_hermitian(4, seed=8)
    assert np.array_equal(m, adjoint(m))
    assert np.array_equal(m, gue_hermitian(4, seed=8))
    assert abs(np.trace(m).imag) == 0.0
    assert gue_hermitian(1, seed=1).imag == 0.0


def test_assert_density_rejects_bad_inputs():
    with pytest.raises(NotDensityError):
        assert_density(np.array([[0.5, 1.0], [0.0, 0.5]]))  # not Hermitian
    with pytest.raises(NotDensityError):
        assert_density(np.diag([0.9, 0.3]))  # trace 1.2
    with pytest.raises(NotDensityError):
        assert_density(np.diag([1.2, -0.2]))  # negative eigenvalue
    assert_density(maximally_mixed(5))


def test_maximally_mixed_requires_positive_dim():
    with pytest.raises(BadDimensionError):
        maximally_mixed(0)


def test_is_hermitian_relative_scale():
    big = 1e6 * np.identity(3) + 1e-4 * np.array([[0, 1j, 0], [0, 0, 0], [0, 0, 0]])
    assert is_hermitian(big)  # defect tiny relative to the norm
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))
