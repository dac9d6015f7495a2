from functools import cached_property
from typing import Optional

import numpy as np
import scipy.linalg as la

from mpnormal.config import TOL_HERMITIAN, TOL_KERNEL, TOL_UNITARY
from mpnormal.errors import ValidationError, SignConstraintError


SIGN_CONSTRAINTS = ('nonpositive', 'nonnegative', 'none')


#
# helper functions
#

def as_square_matrix(entries, name:str='matrix') -> np.ndarray:
	matrix = np.array(entries, dtype=complex)
	if matrix.ndim == 0:
		matrix = matrix.reshape(1, 1)
	if (matrix.ndim != 2) or (matrix.shape[0] != matrix.shape[1]) or (matrix.shape[0] < 1):
		raise ValidationError(f"{name} must be a non-empty square matrix, got shape {matrix.shape}.")
	if not np.all(np.isfinite(matrix)):
		row, col = np.argwhere(~np.isfinite(matrix))[0]
		raise ValidationError(f"{name} has a non-finite entry at ({row}, {col}).")
	matrix.setflags(write=False)
	return matrix


class EigenSystem:
	def __init__(self, eigenvalues:np.ndarray, eigenvectors:np.ndarray):
		self.eigenvalues = eigenvalues
		self.eigenvectors = eigenvectors
		self.eigenvalues.setflags(write=False)
		self.eigenvectors.setflags(write=False)

	def __repr__(self):
		return f'''<EigenSystem (dim={len(self.eigenvalues)}): eigenvalues={np.array2string(self.eigenvalues, precision=4)}>'''

	def __len__(self):
		return len(self.eigenvalues)

	def reconstruct(self) -> np.ndarray:
		return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

	def residuals(self, matrix:np.ndarray) -> np.ndarray:
		# ||A v - alpha v|| per eigenpair
		return np.linalg.norm(matrix @ self.eigenvectors - self.eigenvectors * self.eigenvalues, axis=0)


#
# Self-adjoint coefficient operators
#

class HermitianOperator:
	"""Finite self-adjoint coefficient matrix (the A_k of the differential expression).

	The eigendecomposition is computed once and cached, so every functional-calculus
	path (square roots, kernels, exponentials) works from the same spectral data.
	In finite dimension the extension of A_k to the negative space coincides with
	A_k itself, so a single matrix stands for both.
	"""
	def __init__(self, entries, sign_constraint:str='none', tol_kernel:float=TOL_KERNEL, name:str='A'):
		if sign_constraint not in SIGN_CONSTRAINTS:
			raise ValueError(f"[Error] Unknown sign constraint: '{sign_constraint}'.")
		self.entries = as_square_matrix(entries, name=name)
		self.sign_constraint = sign_constraint
		self.tol_kernel = tol_kernel
		self.name = name

		# check self-adjointness entry-wise
		deviation = np.abs(self.entries - self.entries.conj().T)
		scale = max(1., float(np.max(np.abs(self.entries))))
		if np.max(deviation) > TOL_HERMITIAN * scale:
			row, col = np.unravel_index(np.argmax(deviation), deviation.shape)
			raise ValidationError(
				f"{name} is not Hermitian: entry ({row}, {col}) = {self.entries[row, col]:.6g} "
				f"but entry ({col}, {row}) = {self.entries[col, row]:.6g}."
			)

	def __repr__(self):
		return f'''<HermitianOperator '{self.name}' (dim={self.dim}, sign={self.sign_constraint}): spectrum=[{self.eigenvalues[0]:.4g}, {self.eigenvalues[-1]:.4g}]>'''

	@property
	def dim(self) -> int:
		return self.entries.shape[0]

	@cached_property
	def eigensystem(self) -> EigenSystem:
		# symmetrize to remove roundoff asymmetry before the Hermitian solver
		hermitian = (self.entries + self.entries.conj().T) / 2
		eigenvalues, eigenvectors = la.eigh(hermitian)
		return EigenSystem(eigenvalues=np.asarray(eigenvalues, dtype=float), eigenvectors=np.asarray(eigenvectors, dtype=complex))

	@property
	def eigenvalues(self) -> np.ndarray:
		return self.eigensystem.eigenvalues

	@property
	def eigenvectors(self) -> np.ndarray:
		return self.eigensystem.eigenvectors

	@property
	def norm(self) -> float:
		return float(np.max(np.abs(self.eigenvalues)))

	@property
	def hermitian_residual(self) -> float:
		return float(np.max(np.abs(self.entries - self.entries.conj().T)))

	def kernel_threshold(self, tol:Optional[float]=None) -> float:
		tol = self.tol_kernel if tol is None else tol
		return tol * max(1., self.norm)

	def sign_violation(self, constraint:Optional[str]=None) -> Optional[float]:
		# returns the worst offending eigenvalue, or None if the constraint holds within tolerance
		constraint = self.sign_constraint if constraint is None else constraint
		threshold = self.kernel_threshold()
		if constraint == 'nonpositive' and self.eigenvalues[-1] > threshold:
			return float(self.eigenvalues[-1])
		if constraint == 'nonnegative' and self.eigenvalues[0] < -threshold:
			return float(self.eigenvalues[0])
		return None

	def check_sign(self):
		violation = self.sign_violation()
		if violation is not None:
			raise SignConstraintError(f"{self.name} violates its {self.sign_constraint} constraint: eigenvalue {violation:.6g}.")
		return self

	def serialize(self):
		return self.name, self.sign_constraint, self.entries.tolist()


class UnitaryOperator:
	def __init__(self, entries, name:str='W'):
		self.entries = as_square_matrix(entries, name=name)
		self.name = name

	def __repr__(self):
		return f'''<UnitaryOperator '{self.name}' (dim={self.dim}): residual={self.unitarity_residual:.2e}>'''

	@property
	def dim(self) -> int:
		return self.entries.shape[0]

	@property
	def adjoint(self) -> np.ndarray:
		return self.entries.conj().T

	@cached_property
	def unitarity_residual(self) -> float:
		return float(np.linalg.norm(self.adjoint @ self.entries - np.eye(self.dim), ord='fro'))

	@property
	def is_unitary(self) -> bool:
		return self.unitarity_residual <= TOL_UNITARY * self.dim

	def serialize(self):
		return self.name, self.entries.tolist()


#
# validating constructors
#

def hermitian_from(entries, sign_constraint:str='none', tol_kernel:float=TOL_KERNEL, name:str='A') -> HermitianOperator:
	return HermitianOperator(entries, sign_constraint=sign_constraint, tol_kernel=tol_kernel, name=name).check_sign()


def unitary_from(entries, name:str='W') -> UnitaryOperator:
	operator = UnitaryOperator(entries, name=name)
	if not operator.is_unitary:
		raise ValidationError(f"{name} is not unitary: ||W*W - I||_F = {operator.unitarity_residual:.3e}.")
	return operator
