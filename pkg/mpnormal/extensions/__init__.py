from .problem import MultipointProblem, ExtensionParams, build_problem, scalar_extension, conjugate_problem
from .builder import NormalityReport, BoundaryResidualReport, validate_extension, check_boundary_conditions
