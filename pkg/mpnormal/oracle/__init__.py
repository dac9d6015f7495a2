from .quadrature import gauss_nodes, quadrature_l2, witness_quadrature
from .finite_difference import (
	SCHEMES, FDEigenResult, EigenvalueMatch, assemble, upwind_matrix, fd_interval_eigenvalues,
	match_eigenvalues, filter_spurious, grid_sweep
)
from .normality import normality_probe, normality_trend
from .galerkin import EXAMPLE_ENDPOINTS, neumann_eigenvalues, build_example35
