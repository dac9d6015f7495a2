import logging
import math
import warnings

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from mpnormal.config import TOL_KERNEL, EXP_OVERFLOW, UNDERFLOW
from mpnormal.errors import ValidationError, SignConstraintError, RangeError, PrecisionWarning
from mpnormal.operators.model import EigenSystem, HermitianOperator


logger = logging.getLogger(__name__)

LOG_UNDERFLOW = math.log(UNDERFLOW)


#
# spectral functional calculus
#

def eig_hermitian(operator:HermitianOperator) -> EigenSystem:
	return operator.eigensystem


def psd_sqrt(operator:HermitianOperator, negate:bool=False) -> HermitianOperator:
	# (-A)^(1/2) shares the eigenvectors of A with negated eigenvalues
	eigenvalues = -operator.eigenvalues if negate else operator.eigenvalues
	threshold = operator.kernel_threshold()
	if np.min(eigenvalues) < -threshold:
		raise SignConstraintError(
			f"Cannot take the square root of {'-' if negate else ''}{operator.name}: "
			f"eigenvalue {np.min(eigenvalues):.6g} is below -{threshold:.3g}."
		)
	roots = np.sqrt(np.clip(eigenvalues, 0., None))
	vectors = operator.eigenvectors
	entries = (vectors * roots) @ vectors.conj().T
	name = f"(-{operator.name})^1/2" if negate else f"{operator.name}^1/2"
	return HermitianOperator((entries + entries.conj().T) / 2, sign_constraint='nonnegative', tol_kernel=operator.tol_kernel, name=name)


def kernel_basis(operator:HermitianOperator, tol:float=TOL_KERNEL) -> np.ndarray:
	# orthonormal kernel basis as columns (dim x dim ker)
	mask = np.abs(operator.eigenvalues) <= tol * max(1., operator.norm)
	return np.array(operator.eigenvectors[:, mask])


def _exponents(operator:HermitianOperator, lam:complex, tau:float) -> np.ndarray:
	if not np.isfinite(tau):
		raise RangeError(f"Exponential time must be finite, got {tau}.")
	return (complex(lam) - operator.eigenvalues) * tau


def _warn_underflow(operator:HermitianOperator, tau:float):
	decay = -operator.eigenvalues * tau
	if np.any(decay < LOG_UNDERFLOW):
		warnings.warn(
			f"[Warning] e^(-{operator.name} * {tau:.4g}) has entries below {UNDERFLOW:.0e} "
			f"(smallest exponent {np.min(decay):.4g}); they are represented as zero.",
			PrecisionWarning, stacklevel=3
		)


def operator_exp(operator:HermitianOperator, lam:complex, tau:float) -> np.ndarray:
	"""Evaluates e^{-(A - lam) tau} = V diag(e^{(lam - alpha_j) tau}) V*."""
	exponents = _exponents(operator, lam, tau)
	if np.max(exponents.real) > EXP_OVERFLOW:
		worst = int(np.argmax(exponents.real))
		raise RangeError(
			f"e^(-({operator.name} - {complex(lam):.4g}) * {tau:.4g}) overflows: "
			f"exponent {exponents[worst].real:.4g} for eigenvalue {operator.eigenvalues[worst]:.6g}."
		)
	_warn_underflow(operator, tau)
	vectors = operator.eigenvectors
	return (vectors * np.exp(exponents)) @ vectors.conj().T


def operator_exp_apply(operator:HermitianOperator, lam:complex, tau:float, vector, drop:float=1e-12) -> np.ndarray:
	# modal coefficients below drop * ||c|| are zero to working precision and are not propagated
	vector = np.asarray(vector, dtype=complex)
	coefficients = operator.eigenvectors.conj().T @ vector
	scale = np.linalg.norm(coefficients)
	if not np.isfinite(scale):
		raise RangeError(f"Cannot propagate a non-finite vector through e^(-({operator.name} - {complex(lam):.4g}) * {tau:.4g}).")
	if scale == 0.:
		return np.zeros_like(vector)
	active = np.abs(coefficients) > drop * scale
	exponents = _exponents(operator, lam, tau)
	if np.max(exponents.real[active]) > EXP_OVERFLOW:
		raise RangeError(
			f"e^(-({operator.name} - {complex(lam):.4g}) * {tau:.4g}) overflows on an active mode "
			f"(exponent {np.max(exponents.real[active]):.4g})."
		)
	propagated = np.zeros_like(coefficients)
	propagated[active] = np.exp(exponents[active]) * coefficients[active]
	return operator.eigenvectors @ propagated


def scaled_taylor_exp(matrix, terms:int=30) -> np.ndarray:
	# scaling and squaring with a truncated Taylor series
	matrix = np.asarray(matrix, dtype=complex)
	norm = np.linalg.norm(matrix, ord=1)
	squarings = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
	scaled = matrix / (2 ** squarings)
	result = np.eye(matrix.shape[0], dtype=complex)
	term = np.eye(matrix.shape[0], dtype=complex)
	for k in range(1, terms + 1):
		term = term @ scaled / k
		result = result + term
	for _ in range(squarings):
		result = result @ result
	return result


def commutator_norm(left, right) -> float:
	left = left.entries if hasattr(left, 'entries') else np.asarray(left)
	right = right.entries if hasattr(right, 'entries') else np.asarray(right)
	return float(np.linalg.norm(left @ right - right @ left, ord='fro'))


#
# positive-norm inner product
#

def plus_inner_product(operator:HermitianOperator, f, g) -> complex:
	# (f, g)_+ = (A f, A g) + (f, g), linear in the first argument
	f = np.asarray(f, dtype=complex)
	g = np.asarray(g, dtype=complex)
	if (f.shape != (operator.dim,)) or (g.shape != (operator.dim,)):
		raise ValidationError(f"Vector dimensions {f.shape} and {g.shape} do not match operator dimension {operator.dim}.")
	return complex(np.vdot(operator.entries @ g, operator.entries @ f) + np.vdot(g, f))


#
# coefficient validation
#

@dataclass
class CoefficientReport:
	hermitian_residuals: tuple
	sign_violations: list = field(default_factory=list)
	kernel_dims: tuple = (0, 0)
	passed: bool = True

	def __str__(self):
		lines = [f"coefficients: {'pass' if self.passed else 'fail'}"]
		lines += [f"  hermitian residual A{k + 1}: {residual:.3e}" for k, residual in enumerate(self.hermitian_residuals)]
		lines += [f"  sign violation: {violation}" for violation in self.sign_violations]
		lines += [f"  dim ker (-A1)^1/2 = {self.kernel_dims[0]}, dim ker A3^1/2 = {self.kernel_dims[1]}"]
		return '\n'.join(lines)


def validate_coefficients(A1:HermitianOperator, A2:HermitianOperator, A3:HermitianOperator, tol:Optional[float]=None) -> CoefficientReport:
	if not (A1.dim == A2.dim == A3.dim):
		raise ValidationError(f"Coefficient operators must share a dimension, got {A1.dim}, {A2.dim}, {A3.dim}.")

	violations = []
	for label, operator, constraint in [('A1', A1, 'nonpositive'), ('A2', A2, 'nonnegative'), ('A3', A3, 'nonnegative')]:
		violation = operator.sign_violation(constraint)
		if violation is not None:
			relation = 'positive' if constraint == 'nonpositive' else 'negative'
			violations.append(f"{label} has {relation} eigenvalue {violation:.6g}")

	# ker (-A1)^1/2 = ker A1 and ker A3^1/2 = ker A3
	kernel_dims = (
		kernel_basis(A1, tol=A1.tol_kernel if tol is None else tol).shape[1],
		kernel_basis(A3, tol=A3.tol_kernel if tol is None else tol).shape[1]
	)
	report = CoefficientReport(
		hermitian_residuals=(A1.hermitian_residual, A2.hermitian_residual, A3.hermitian_residual),
		sign_violations=violations,
		kernel_dims=kernel_dims,
		passed=(len(violations) == 0)
	)
	logger.debug("Validated coefficients: %s", report)
	return report
