"""Polynomial-chaos basis, projections, and the static coupling matrices."""

import numpy as np
import pytest

from chemosap.errors import ConfigurationError, ContractViolation
from chemosap.gpc import (RandomCoefficient, assemble_weighted_matrix,
                          build_basis, build_static_matrices, mean_std,
                          project_function)


def test_orthonormality():
    """[DERIVED] <Phi_i Phi_j> = delta_ij under the z-quadrature."""
    basis = build_basis(4)
    phi = basis.eval_table
    gram = phi.T @ (phi * basis.z_weights[:, None])
    np.testing.assert_allclose(gram, np.eye(basis.K), atol=1e-12)


def test_weights_sum_to_one():
    basis = build_basis(3)
    assert np.sum(basis.z_weights) == pytest.approx(1.0)


def test_first_mode_is_constant_one():
    basis = build_basis(2)
    np.testing.assert_allclose(basis.eval_table[:, 0], 1.0)


def test_affine_matrix_is_tridiagonal_with_known_entries():
    """[DERIVED] <z Phi_k Phi_{k+1}> = (k+1)/sqrt((2k+1)(2k+3))."""
    basis = build_basis(4)
    coeff = RandomCoefficient(1.0, 0.5)
    m = assemble_weighted_matrix(coeff, basis)
    np.testing.assert_allclose(np.diag(m), 1.0, atol=1e-13)
    for k in range(basis.K - 1):
        expected = 0.5 * (k + 1) / np.sqrt((2 * k + 1) * (2 * k + 3))
        assert m[k, k + 1] == pytest.approx(expected, abs=1e-13)
        assert m[k + 1, k] == pytest.approx(expected, abs=1e-13)
    # no coupling beyond the first off-diagonal for an affine weight
    np.testing.assert_allclose(np.triu(m, 2), 0.0, atol=1e-13)


def test_static_matrices_deterministic_reduction():
    """[TRIVIAL] constant alpha: M = alpha I and M~ = I / alpha."""
    basis = build_basis(3)
    static = build_static_matrices(RandomCoefficient(2.0, 0.0), basis)
    np.testing.assert_allclose(static.M, 2.0 * np.eye(basis.K), atol=1e-13)
    np.testing.assert_allclose(static.M_tilde, 0.5 * np.eye(basis.K), atol=1e-13)


def test_static_matrices_symmetric_positive():
    basis = build_basis(4)
    static = build_static_matrices(RandomCoefficient(1.0, 0.5), basis)
    for mat in (static.M, static.M_tilde):
        np.testing.assert_allclose(mat, mat.T, atol=1e-13)
        assert np.min(np.linalg.eigvalsh(mat)) > 0.0


def test_projection_reproduces_polynomials():
    """[DERIVED] projecting a degree-<=N polynomial is exact at the nodes."""
    basis = build_basis(4)
    values = 1.0 + basis.z_nodes - 2.0 * basis.z_nodes ** 3
    coeffs = project_function(values, basis)
    np.testing.assert_allclose(basis.reconstruct(coeffs), values, atol=1e-12)


def test_projection_shape_contract():
    basis = build_basis(2)
    with pytest.raises(ContractViolation):
        project_function(np.ones(3), basis)


def test_mean_std_of_known_expansion():
    """[TRIVIAL] mean is mode 0; std is the rms of the higher modes."""
    coeffs = np.array([[2.0, 3.0, 4.0]])
    mean, std = mean_std(coeffs)
    assert mean[0] == pytest.approx(2.0)
    assert std[0] == pytest.approx(5.0)


def test_random_coefficient_positivity_guard():
    with pytest.raises(ConfigurationError):
        RandomCoefficient(1.0, 1.0)
    coeff = RandomCoefficient(1.0, 0.5)
    assert coeff(-1.0) == pytest.approx(0.5)
    assert coeff(1.0) == pytest.approx(1.5)


def test_build_basis_guards():
    with pytest.raises(ConfigurationError):
        build_basis(-1)
    with pytest.raises(ConfigurationError):
        build_basis(4, n_znodes=2)
