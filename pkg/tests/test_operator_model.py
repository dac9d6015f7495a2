import numpy as np
import pytest

from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from mpnormal.errors import ValidationError, SignConstraintError, RangeError, PrecisionWarning
from mpnormal.oracle import build_example35
from mpnormal.operators import (
	HermitianOperator, UnitaryOperator, hermitian_from, unitary_from, eig_hermitian, psd_sqrt, kernel_basis,
	operator_exp, operator_exp_apply, scaled_taylor_exp, commutator_norm, plus_inner_product, validate_coefficients
)

from conftest import make_hermitian, make_psd, make_unitary, make_vector


#
# eigendecomposition
#

def test_eig_identity():
	system = eig_hermitian(HermitianOperator(np.eye(2)))
	np.testing.assert_allclose(system.eigenvalues, [1., 1.])


def test_eig_diagonal():
	system = eig_hermitian(HermitianOperator(np.diag([-1., 0.])))
	np.testing.assert_allclose(system.eigenvalues, [-1., 0.])


def test_eig_reconstruction(rng):
	operator = HermitianOperator(make_hermitian(rng, 5))
	system = eig_hermitian(operator)
	assert np.all(np.diff(system.eigenvalues) >= 0)
	assert np.max(np.abs(system.reconstruct() - operator.entries)) <= 1e-10 * max(1., operator.norm)
	assert np.max(system.residuals(operator.entries)) <= 1e-10 * max(1., operator.norm)
	np.testing.assert_allclose(system.eigenvectors.conj().T @ system.eigenvectors, np.eye(5), atol=1e-12)


def test_non_hermitian_names_entry():
	with pytest.raises(ValidationError, match=r'entry \(0, 1\)'):
		HermitianOperator([[1., 2.], [0., 1.]], name='A2')


def test_non_finite_rejected():
	with pytest.raises(ValidationError):
		HermitianOperator([[np.nan]])


def test_hermitian_from_sign():
	assert hermitian_from(np.diag([-1., 0.]), sign_constraint='nonpositive').dim == 2
	with pytest.raises(SignConstraintError):
		hermitian_from(np.diag([1., 0.]), sign_constraint='nonpositive')


def test_unitary_from():
	assert unitary_from([[0., 1.], [1., 0.]]).is_unitary
	with pytest.raises(ValidationError):
		unitary_from([[2., 0.], [0., 1.]])


#
# square roots and kernels
#

def test_sqrt_zero():
	root = psd_sqrt(HermitianOperator(np.zeros((2, 2))))
	np.testing.assert_allclose(root.entries, np.zeros((2, 2)))


def test_sqrt_diagonal():
	root = psd_sqrt(HermitianOperator(np.diag([0., 4.])))
	np.testing.assert_allclose(root.entries, np.diag([0., 2.]), atol=1e-14)


def test_sqrt_squares_back(rng):
	operator = HermitianOperator(make_psd(rng, 4))
	root = psd_sqrt(operator)
	assert root.sign_violation('nonnegative') is None
	assert np.max(np.abs(root.entries @ root.entries - operator.entries)) <= 1e-12 * max(1., operator.norm) * 10


def test_sqrt_negated():
	root = psd_sqrt(HermitianOperator(np.diag([-9., 0.])), negate=True)
	np.testing.assert_allclose(root.entries, np.diag([3., 0.]), atol=1e-14)


def test_sqrt_rejects_negative():
	with pytest.raises(SignConstraintError):
		psd_sqrt(HermitianOperator(np.diag([-1., 2.])))


def test_sqrt_clips_roundoff():
	root = psd_sqrt(HermitianOperator(np.diag([-1e-14, 1.])))
	np.testing.assert_allclose(root.entries, np.diag([0., 1.]), atol=1e-14)


def test_kernel_diagonal():
	basis = kernel_basis(HermitianOperator(np.diag([0., 3.])))
	assert basis.shape == (2, 1)
	np.testing.assert_allclose(np.abs(basis[:, 0]), [1., 0.], atol=1e-14)


def test_kernel_injective():
	assert kernel_basis(HermitianOperator(np.diag([2., 3.]))).shape[1] == 0


def test_kernel_projector(rng):
	vectors = np.linalg.qr(rng.normal(size=(3, 2)))[0]
	operator = HermitianOperator(vectors @ vectors.T)
	basis = kernel_basis(operator)
	assert basis.shape[1] == 3 - np.linalg.matrix_rank(operator.entries)
	assert np.linalg.norm(operator.entries @ basis) <= 2e-10 * max(1., operator.norm)


#
# exponentials
#

def test_exp_identity():
	np.testing.assert_allclose(operator_exp(HermitianOperator(np.zeros((2, 2))), 0., 1.), np.eye(2))


def test_exp_scalar():
	np.testing.assert_allclose(operator_exp(HermitianOperator([[2.]]), 0., 1.), [[np.exp(-2.)]])
	assert abs(operator_exp(HermitianOperator([[2.]]), 0., 1.)[0, 0] - 0.135335) < 1e-6


def test_exp_matches_taylor(rng):
	operator = HermitianOperator(make_hermitian(rng, 3))
	lam, tau = 1 + 2j, .7
	expected = scaled_taylor_exp(-(operator.entries - lam * np.eye(3)) * tau)
	np.testing.assert_allclose(operator_exp(operator, lam, tau), expected, atol=1e-10)


def test_exp_zero_time(rng):
	operator = HermitianOperator(make_hermitian(rng, 4))
	np.testing.assert_allclose(operator_exp(operator, 3 - 1j, 0.), np.eye(4), atol=1e-14)


def test_exp_semigroup(rng):
	operator = HermitianOperator(make_psd(rng, 3))
	lam = .5 + 1j
	combined = operator_exp(operator, lam, .3) @ operator_exp(operator, lam, .4)
	np.testing.assert_allclose(operator_exp(operator, lam, .7), combined, atol=1e-10)


def test_exp_overflow():
	with pytest.raises(RangeError):
		operator_exp(HermitianOperator([[-800.]]), 0., 1.)


def test_exp_underflow_warns():
	with pytest.warns(PrecisionWarning):
		operator_exp(HermitianOperator(np.diag([1., 1000.])), 0., 1.)


def test_exp_apply_skips_inactive_modes():
	operator = HermitianOperator(np.diag([0., -2000.]))
	vector = operator_exp_apply(operator, 0., 1., [1., 0.])
	np.testing.assert_allclose(vector, [1., 0.])
	with pytest.raises(RangeError):
		operator_exp_apply(operator, 0., 1., [0., 1.])


def test_commutator_norm():
	assert commutator_norm(np.eye(2), np.diag([1., 3.])) == 0.
	assert commutator_norm([[0., 1.], [1., 0.]], np.diag([1., 3.])) > 1.


#
# positive-norm inner product
#

def test_plus_inner_zero_operator(rng):
	f, g = make_vector(rng, 3), make_vector(rng, 3)
	assert plus_inner_product(HermitianOperator(np.zeros((3, 3))), f, g) == pytest.approx(np.vdot(g, f))


def test_plus_inner_diagonal():
	assert plus_inner_product(HermitianOperator(np.diag([1., 2.])), [1., 0.], [1., 0.]) == pytest.approx(2.)


def test_plus_inner_conjugate_symmetry(rng):
	operator = HermitianOperator(make_hermitian(rng, 4))
	f, g = make_vector(rng, 4), make_vector(rng, 4)
	assert plus_inner_product(operator, f, g) == pytest.approx(np.conj(plus_inner_product(operator, g, f)))


def test_plus_inner_dimension_mismatch():
	with pytest.raises(ValidationError):
		plus_inner_product(HermitianOperator(np.eye(2)), [1., 0., 0.], [1., 0.])


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), dim=st.integers(min_value=1, max_value=5))
def test_plus_norm_dominates(seed, dim):
	rng = np.random.default_rng(seed)
	operator = HermitianOperator(make_hermitian(rng, dim))
	f = make_vector(rng, dim)
	value = plus_inner_product(operator, f, f)
	assert abs(value.imag) <= 1e-10 * abs(value)
	assert value.real >= np.vdot(f, f).real


@settings(max_examples=50, deadline=None)
@given(factor=st.integers(min_value=1, max_value=4).flatmap(
	lambda dim: hnp.arrays(np.float64, (dim, dim), elements=st.floats(min_value=-10., max_value=10.))
))
def test_sqrt_of_gram_matrix(factor):
	gram = factor @ factor.T
	operator = HermitianOperator((gram + gram.T) / 2)
	root = psd_sqrt(operator)
	np.testing.assert_allclose(root.entries @ root.entries, operator.entries, atol=1e-8 * max(1., operator.norm))


#
# coefficient validation
#

def test_validate_coefficients_pass():
	report = validate_coefficients(
		HermitianOperator(np.diag([-1., 0.])), HermitianOperator(np.diag([1., 2.])), HermitianOperator(np.diag([0., 2.]))
	)
	assert report.passed
	assert report.kernel_dims == (1, 1)


def test_validate_coefficients_violation():
	report = validate_coefficients(
		HermitianOperator(np.diag([1., 0.])), HermitianOperator(np.diag([1., 2.])), HermitianOperator(np.diag([0., 2.]))
	)
	assert not report.passed
	assert 'A1 has positive eigenvalue' in report.sign_violations[0]


def test_validate_coefficients_example():
	problem, _ = build_example35(4)
	assert problem.coefficients.passed
	assert problem.coefficients.kernel_dims == (1, 1)


def test_unitary_residual(rng):
	assert UnitaryOperator(make_unitary(rng, 4)).unitarity_residual <= 1e-12 * 4
