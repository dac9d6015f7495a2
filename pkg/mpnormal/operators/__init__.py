from .model import HermitianOperator, UnitaryOperator, EigenSystem, hermitian_from, unitary_from
from .calculus import (
	eig_hermitian, psd_sqrt, kernel_basis, operator_exp, operator_exp_apply, scaled_taylor_exp,
	commutator_norm, plus_inner_product, validate_coefficients, CoefficientReport
)
