from functools import cached_property

import numpy as np

from mpnormal.config import TOL_KERNEL
from mpnormal.errors import ValidationError, SignConstraintError
from mpnormal.operators import HermitianOperator, UnitaryOperator, psd_sqrt, validate_coefficients


class MultipointProblem:
	"""The expression l = (d/dt + A1, d/dt + A2, d/dt + A3) on (-inf, a1), (a2, b2), (a3, +inf)."""
	def __init__(self, a1:float, a2:float, b2:float, a3:float, A1:HermitianOperator, A2:HermitianOperator, A3:HermitianOperator, strict:bool=True):
		self.a1, self.a2, self.b2, self.a3 = float(a1), float(a2), float(b2), float(a3)
		if not (self.a1 < self.a2 < self.b2 < self.a3):
			raise ValidationError(f"Endpoints must satisfy a1 < a2 < b2 < a3, got ({a1}, {a2}, {b2}, {a3}).")
		self.A1, self.A2, self.A3 = A1, A2, A3
		self.coefficients = validate_coefficients(A1, A2, A3)
		if strict and not self.coefficients.passed:
			raise SignConstraintError('; '.join(self.coefficients.sign_violations))

	def __repr__(self):
		return f'''<MultipointProblem (dim={self.dim}): a1={self.a1}, (a2, b2)=({self.a2}, {self.b2}), a3={self.a3}>'''

	@property
	def dim(self) -> int:
		return self.A1.dim

	@property
	def tau(self) -> float:
		return self.b2 - self.a2

	@cached_property
	def sqrt_A1(self) -> HermitianOperator:
		return psd_sqrt(self.A1, negate=True)

	@cached_property
	def sqrt_A3(self) -> HermitianOperator:
		return psd_sqrt(self.A3)

	def serialize(self):
		return (self.a1, self.a2, self.b2, self.a3), self.A1.entries.tolist(), self.A2.entries.tolist(), self.A3.entries.tolist()


class ExtensionParams:
	def __init__(self, W1:UnitaryOperator, W2:UnitaryOperator):
		if W1.dim != W2.dim:
			raise ValidationError(f"W1 and W2 must share a dimension, got {W1.dim} and {W2.dim}.")
		self.W1 = W1
		self.W2 = W2

	def __repr__(self):
		return f'''<ExtensionParams (dim={self.dim}): W1 residual={self.W1.unitarity_residual:.2e}, W2 residual={self.W2.unitarity_residual:.2e}>'''

	@property
	def dim(self) -> int:
		return self.W1.dim

	def serialize(self):
		return self.W1.entries.tolist(), self.W2.entries.tolist()


#
# constructors
#

def build_problem(a1:float, a2:float, b2:float, a3:float, A1, A2, A3, tol_kernel:float=TOL_KERNEL, strict:bool=True) -> MultipointProblem:
	return MultipointProblem(
		a1, a2, b2, a3,
		A1=HermitianOperator(A1, sign_constraint='nonpositive', tol_kernel=tol_kernel, name='A1'),
		A2=HermitianOperator(A2, sign_constraint='nonnegative', tol_kernel=tol_kernel, name='A2'),
		A3=HermitianOperator(A3, sign_constraint='nonnegative', tol_kernel=tol_kernel, name='A3'),
		strict=strict
	)


def scalar_extension(phi:float, psi:float) -> ExtensionParams:
	# u3(a3) = e^{i phi} u1(a1), u2(b2) = e^{i psi} u2(a2)
	for label, angle in [('phi', phi), ('psi', psi)]:
		if not (0. <= angle < 2 * np.pi):
			raise ValidationError(f"{label} must lie in [0, 2pi), got {angle}.")
	return ExtensionParams(
		W1=UnitaryOperator([[np.exp(1j * phi)]], name='W1'),
		W2=UnitaryOperator([[np.exp(1j * psi)]], name='W2')
	)


def conjugate_problem(problem:MultipointProblem, params:ExtensionParams, U) -> tuple:
	# A_k -> U A_k U*, W_k -> U W_k U*
	U = np.asarray(U, dtype=complex)
	conjugate = lambda matrix: U @ matrix @ U.conj().T
	conjugated = MultipointProblem(
		problem.a1, problem.a2, problem.b2, problem.a3,
		A1=HermitianOperator(conjugate(problem.A1.entries), 'nonpositive', problem.A1.tol_kernel, name='A1'),
		A2=HermitianOperator(conjugate(problem.A2.entries), 'nonnegative', problem.A2.tol_kernel, name='A2'),
		A3=HermitianOperator(conjugate(problem.A3.entries), 'nonnegative', problem.A3.tol_kernel, name='A3'),
		strict=False
	)
	return conjugated, ExtensionParams(
		W1=UnitaryOperator(conjugate(params.W1.entries), name='W1'),
		W2=UnitaryOperator(conjugate(params.W2.entries), name='W2')
	)
