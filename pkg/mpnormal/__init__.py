from mpnormal.errors import (
	MPNormalError, ValidationError, SignConstraintError, InconsistentCoefficientsError, IntegrabilityError,
	NoWitnessError, ConfigError, NumericalError, RangeError, PrecisionLossError, NearSingularError, PrecisionWarning
)
from mpnormal.operators import HermitianOperator, UnitaryOperator, EigenSystem
from mpnormal.boundary import TestFunction, BoundaryPair
from mpnormal.extensions import MultipointProblem, ExtensionParams, NormalityReport, build_problem, scalar_extension, validate_extension
from mpnormal.spectrum import BranchWindow, IntervalEigenvalue, SpectrumResult, full_spectrum, membership
from mpnormal.oracle import build_example35
