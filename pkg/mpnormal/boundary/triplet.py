import logging

import numpy as np

from mpnormal.boundary.functions import TestFunction, BoundaryPair, l2_pairing, l2_norm_squared
from mpnormal.errors import ValidationError


logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.)


#
# helper functions
#

def _check_tags(function:TestFunction, interval:str, role:str):
	if function.interval != interval:
		raise ValidationError(f"{role} must be a {interval} profile, got a {function.interval} profile.")


def _inner(f, g) -> complex:
	# (f, g)_H, linear in the first argument
	return complex(np.vdot(g, f))


def _boundary_form(pair_u:BoundaryPair, pair_v:BoundaryPair) -> complex:
	# (gamma1(u), gamma2(v)) - (gamma2(u), gamma1(v))
	return _inner(pair_u.gamma1, pair_v.gamma2) - _inner(pair_u.gamma2, pair_v.gamma1)


#
# boundary maps
#

def boundary_maps_halfline(u_left:TestFunction, u_right:TestFunction) -> BoundaryPair:
	_check_tags(u_left, 'left', 'u_left')
	_check_tags(u_right, 'right', 'u_right')
	if u_left.dim != u_right.dim:
		raise ValidationError(f"Half-line profiles have mismatching dimensions {u_left.dim} and {u_right.dim}.")
	value_a1, value_a3 = u_left.boundary_value(), u_right.boundary_value()
	return BoundaryPair(
		gamma1=(value_a3 + value_a1) / (1j * SQRT2),
		gamma2=(value_a3 - value_a1) / SQRT2
	)


def boundary_maps_interval(u_mid:TestFunction) -> BoundaryPair:
	_check_tags(u_mid, 'middle', 'u_mid')
	value_a2, value_b2 = u_mid.boundary_value(), u_mid.end_value()
	return BoundaryPair(
		gamma1=(value_b2 + value_a2) / (1j * SQRT2),
		gamma2=(value_b2 - value_a2) / SQRT2
	)


#
# Green identity
#

def apply_expression(u:TestFunction) -> TestFunction:
	# -i d/dt, term-wise on the exponential profile
	return u.derivative().scale(-1j)


def _expression_form(u:TestFunction, v:TestFunction) -> complex:
	return l2_pairing(apply_expression(u), v) - l2_pairing(u, apply_expression(v))


def green_form(u:tuple, v:tuple) -> tuple:
	"""Both sides of the half-line Green identity for (left, right) profile pairs.

	Returns (lhs, rhs) with lhs = (M*u, v) - (u, M*v) summed over both half-lines and
	rhs = (Y1 u, Y2 v) - (Y2 u, Y1 v).
	"""
	u_left, u_right = u
	v_left, v_right = v
	lhs = _expression_form(u_left, v_left) + _expression_form(u_right, v_right)
	rhs = _boundary_form(boundary_maps_halfline(u_left, u_right), boundary_maps_halfline(v_left, v_right))
	return lhs, rhs


def green_form_interval(u:TestFunction, v:TestFunction) -> tuple:
	lhs = _expression_form(u, v)
	rhs = _boundary_form(boundary_maps_interval(u), boundary_maps_interval(v))
	return lhs, rhs


def green_identity_residual(u:tuple, v:tuple) -> complex:
	# a1 closes its interval from the right and a3 opens its interval from the left, so with
	# Y1, Y2 as defined the half-line boundary form enters with orientation -1
	lhs, rhs = green_form(u, v)
	return lhs + rhs


def green_identity_residual_interval(u:TestFunction, v:TestFunction) -> complex:
	lhs, rhs = green_form_interval(u, v)
	return lhs - rhs


#
# surjectivity and regularity
#

def surjectivity_witness(f, g, a1:float=0., a3:float=1.) -> tuple:
	# unit-rate profiles with u1(a1) = (i f - g) / sqrt2 and u3(a3) = (i f + g) / sqrt2
	f = np.asarray(f, dtype=complex)
	g = np.asarray(g, dtype=complex)
	if f.shape != g.shape:
		raise ValidationError(f"Boundary data have mismatching shapes {f.shape} and {g.shape}.")
	u_left = TestFunction('left', [1.], [(1j * f - g) / SQRT2], anchor=a1)
	u_right = TestFunction('right', [-1.], [(1j * f + g) / SQRT2], anchor=a3)
	return u_left, u_right


def sobolev_norms(u:TestFunction, operator) -> tuple:
	# (||u'||^2, ||A u||^2), finite for every exponential profile
	norms = l2_norm_squared(u.derivative()), l2_norm_squared(u.apply(operator))
	logger.debug("Sobolev norms of %s: %s", u, norms)
	return norms
