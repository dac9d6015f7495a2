import logging

import numpy as np

from mpnormal.extensions import MultipointProblem
from mpnormal.operators import UnitaryOperator, commutator_norm
from mpnormal.oracle.finite_difference import upwind_matrix


logger = logging.getLogger(__name__)


def normality_probe(problem:MultipointProblem, W2:UnitaryOperator, m:int) -> float:
	# ||L L* - L* L||_F / ||L||_F^2 for the upwind discretization L of d/dt + A2
	matrix = upwind_matrix(problem, W2, m)
	adjoint = matrix.conj().T
	value = float(np.linalg.norm(matrix @ adjoint - adjoint @ matrix, ord='fro') / np.linalg.norm(matrix, ord='fro') ** 2)
	logger.debug("Normality probe at m=%d: %.3e (||[W2, A2]||_F = %.3e).", m, value, commutator_norm(W2, problem.A2))
	return value


def normality_trend(problem:MultipointProblem, W2:UnitaryOperator, grids) -> list:
	# recorded data for the commutation question, never a pass/fail gate
	commutator = commutator_norm(W2, problem.A2)
	return [
		{'m': int(m), 'probe': normality_probe(problem, W2, int(m)), 'commutator': commutator}
		for m in grids
	]
