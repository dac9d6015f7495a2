import logging

from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from mpnormal.config import TOL_KERNEL, TOL_BOUNDARY
from mpnormal.errors import ValidationError
from mpnormal.extensions.problem import MultipointProblem, ExtensionParams
from mpnormal.operators import CoefficientReport, kernel_basis, commutator_norm


logger = logging.getLogger(__name__)


@dataclass
class NormalityReport:
	w1_unitary: bool
	w1_residual: float
	w2_unitary: bool
	w2_residual: float
	kernel_dims: tuple
	kernel_compatible: bool
	compatibility_residual: float
	extension_exists: bool
	w2_a2_commutator: float
	coefficients: CoefficientReport
	maximality_note: Optional[str] = None

	def __str__(self):
		lines = [
			f"extension exists: {'yes' if self.extension_exists else 'no'}",
			f"W1 unitary: {self.w1_unitary} (||W1*W1 - I||_F = {self.w1_residual:.3e})",
			f"W2 unitary: {self.w2_unitary} (||W2*W2 - I||_F = {self.w2_residual:.3e})",
			f"kernel dims: dim ker (-A1)^1/2 = {self.kernel_dims[0]}, dim ker A3^1/2 = {self.kernel_dims[1]}",
			f"kernel compatible: {self.kernel_compatible} (residual {self.compatibility_residual:.3e})",
			f"||W2 A2 - A2 W2||_F = {self.w2_a2_commutator:.3e}",
			str(self.coefficients)
		]
		if self.maximality_note:
			lines.append(f"note: {self.maximality_note}")
		return '\n'.join(lines)

	def to_dict(self):
		report = asdict(self)
		report['kernel_dims'] = list(self.kernel_dims)
		report['coefficients']['hermitian_residuals'] = list(self.coefficients.hermitian_residuals)
		report['coefficients']['kernel_dims'] = list(self.coefficients.kernel_dims)
		return report


@dataclass
class BoundaryResidualReport:
	coupling_halfline: float
	coupling_interval: float
	kernel_a1: float
	kernel_a3: float
	tol: float = TOL_BOUNDARY

	@property
	def passed(self) -> bool:
		return all(residual <= self.tol for residual in self.residuals().values())

	def residuals(self) -> dict:
		return {
			'u3(a3) - W1 u1(a1)': self.coupling_halfline,
			'u2(b2) - W2 u2(a2)': self.coupling_interval,
			'(-A1)^1/2 u1(a1)': self.kernel_a1,
			'A3^1/2 u3(a3)': self.kernel_a3
		}

	def flags(self) -> dict:
		return {name: residual <= self.tol for name, residual in self.residuals().items()}


#
# helper functions
#

def _check_dims(problem:MultipointProblem, params:ExtensionParams):
	if problem.dim != params.dim:
		raise ValidationError(f"Problem dimension {problem.dim} does not match extension dimension {params.dim}.")


def _kernel_compatibility(W1:np.ndarray, kernel_a1:np.ndarray, kernel_a3:np.ndarray) -> float:
	# largest distance of W1 v (v in ker A1) from span ker A3
	if kernel_a1.shape[1] == 0:
		return 0.
	images = W1 @ kernel_a1
	projected = kernel_a3 @ (kernel_a3.conj().T @ images)
	return float(np.max(np.linalg.norm(images - projected, axis=0)))


#
# validation
#

def validate_extension(problem:MultipointProblem, params:ExtensionParams, tol:float=TOL_KERNEL) -> NormalityReport:
	_check_dims(problem, params)

	# ker (-A1)^1/2 = ker A1 and ker A3^1/2 = ker A3
	kernel_a1 = kernel_basis(problem.A1, tol=problem.A1.tol_kernel)
	kernel_a3 = kernel_basis(problem.A3, tol=problem.A3.tol_kernel)
	kernel_dims = (kernel_a1.shape[1], kernel_a3.shape[1])

	compatibility_residual = _kernel_compatibility(params.W1.entries, kernel_a1, kernel_a3)
	kernel_compatible = compatibility_residual <= tol

	note = None
	injective = [label for label, dim in zip(('A1', 'A3'), kernel_dims) if dim == 0]
	if injective:
		note = (
			f"{' and '.join(injective)} {'is' if len(injective) == 1 else 'are'} one-to-one: "
			f"the minimal operator L0(1,1,1) is maximally formally normal and has no normal extension."
		)
	elif kernel_dims[0] != kernel_dims[1]:
		note = (
			f"dim ker (-A1)^1/2 = {kernel_dims[0]} differs from dim ker A3^1/2 = {kernel_dims[1]}: "
			f"no normal extension exists."
		)
	elif not kernel_compatible:
		note = f"W1 does not map ker (-A1)^1/2 onto ker A3^1/2 (residual {compatibility_residual:.3e})."

	extension_exists = (
		(kernel_dims[0] == kernel_dims[1] > 0)
		and kernel_compatible
		and params.W1.is_unitary and params.W2.is_unitary
		and problem.coefficients.passed
	)
	report = NormalityReport(
		w1_unitary=params.W1.is_unitary, w1_residual=params.W1.unitarity_residual,
		w2_unitary=params.W2.is_unitary, w2_residual=params.W2.unitarity_residual,
		kernel_dims=kernel_dims,
		kernel_compatible=kernel_compatible, compatibility_residual=compatibility_residual,
		extension_exists=extension_exists,
		w2_a2_commutator=commutator_norm(params.W2, problem.A2),
		coefficients=problem.coefficients,
		maximality_note=note
	)
	logger.info("Validated extension: exists=%s, kernel dims=%s", extension_exists, kernel_dims)
	return report


def check_boundary_conditions(problem:MultipointProblem, params:ExtensionParams, u1_a1, u2_a2, u2_b2, u3_a3, tol:float=TOL_BOUNDARY) -> BoundaryResidualReport:
	_check_dims(problem, params)
	u1_a1, u2_a2, u2_b2, u3_a3 = (np.asarray(vector, dtype=complex) for vector in (u1_a1, u2_a2, u2_b2, u3_a3))
	for vector in (u1_a1, u2_a2, u2_b2, u3_a3):
		if vector.shape != (problem.dim,):
			raise ValidationError(f"Boundary vector of shape {vector.shape} does not match problem dimension {problem.dim}.")
	return BoundaryResidualReport(
		coupling_halfline=float(np.linalg.norm(u3_a3 - params.W1.entries @ u1_a1)),
		coupling_interval=float(np.linalg.norm(u2_b2 - params.W2.entries @ u2_a2)),
		kernel_a1=float(np.linalg.norm(problem.sqrt_A1.entries @ u1_a1)),
		kernel_a3=float(np.linalg.norm(problem.sqrt_A3.entries @ u3_a3)),
		tol=tol
	)
