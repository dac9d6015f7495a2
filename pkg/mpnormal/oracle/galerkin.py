import numpy as np

from mpnormal.errors import ValidationError
from mpnormal.extensions import ExtensionParams, build_problem
from mpnormal.operators import UnitaryOperator


# endpoints of the heat-type system: |t| > 1 on the half-lines, |t| < 1/2 on the interval
EXAMPLE_ENDPOINTS = (-1., -.5, .5, 1.)


def neumann_eigenvalues(N:int) -> np.ndarray:
	# -d^2/dx^2 on (0, 1) with u_x(0) = u_x(1) = 0 in the basis {1, cos(pi x), ..., cos((N - 1) pi x)}
	return (np.arange(N) * np.pi) ** 2


def build_example35(N:int, phi:float=0., psi:float=0.) -> tuple:
	"""Galerkin truncation of the heat-type system with Neumann Laplacians.

	A1 = Laplacian, A2 = -Laplacian + 1 and A3 = -Laplacian, coupled by W1 = e^{i phi} I and
	W2 = e^{i psi} I.
	"""
	if int(N) != N or N < 1:
		raise ValidationError(f"Galerkin truncation needs N >= 1 modes, got {N}.")
	N = int(N)
	laplacian = neumann_eigenvalues(N)
	problem = build_problem(
		*EXAMPLE_ENDPOINTS,
		A1=np.diag(-laplacian),
		A2=np.diag(laplacian + 1.),
		A3=np.diag(laplacian)
	)
	params = ExtensionParams(
		W1=UnitaryOperator(np.exp(1j * phi) * np.eye(N), name='W1'),
		W2=UnitaryOperator(np.exp(1j * psi) * np.eye(N), name='W2')
	)
	return problem, params
