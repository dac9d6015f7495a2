import logging

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from mpnormal.boundary import TestFunction, l2_norm_squared
from mpnormal.config import TOL_MARGINAL, TOL_KERNEL, EXP_OVERFLOW
from mpnormal.errors import ValidationError, InconsistentCoefficientsError, NoWitnessError, RangeError, NumericalError
from mpnormal.extensions import MultipointProblem, ExtensionParams, validate_extension
from mpnormal.operators import kernel_basis
from mpnormal.spectrum.result import SpectrumResult
from mpnormal.spectrum.sets import EmptySet, ImaginaryAxis


logger = logging.getLogger(__name__)

REASONS = ('left-growth', 'right-growth', 'marginal')
WITNESS_SIGNS = ('printed', 'decaying')


@dataclass
class PointSpectrumVerdict:
	lam: complex
	reason: str
	left_norm: float  # ||e^{lambda (t - a1)} f1*||^2 on (-inf, a1)
	right_norm: float  # ||e^{lambda (t - a3)} f3*||^2 on (a3, inf)
	verdict: str = 'not eigenvalue'

	def __str__(self):
		return f"lambda = {self.lam:.6g}: {self.verdict} ({self.reason}; ||u1||^2 = {self.left_norm:.4g}, ||u3||^2 = {self.right_norm:.4g})"


@dataclass
class ContinuousSpectrumCertificate:
	descriptor: ImaginaryAxis
	spectrum_a1: np.ndarray
	spectrum_a3: np.ndarray
	intersection: list = field(default_factory=list)

	def to_dict(self):
		return {
			'continuous': self.descriptor.describe(),
			'spectrum_a1': self.spectrum_a1.tolist(),
			'spectrum_a3': self.spectrum_a3.tolist(),
			'intersection': list(self.intersection)
		}


@dataclass
class NonSurjectivityWitness:
	lambda_i: float
	f_star: np.ndarray
	a1: float
	truncated_norms: list
	sign: str = 'printed'

	def is_strictly_increasing(self) -> bool:
		values = [value for _, value in self.truncated_norms]
		return all(later > earlier for earlier, later in zip(values, values[1:]))

	def solution(self, t):
		# would-be solution e^{-i lambda_i t} (e^{-+(t - a1)} - 1) f* of (L - i lambda_i) u = f
		t = np.asarray(t, dtype=float)
		exponent = -(t - self.a1) if self.sign == 'printed' else (t - self.a1)
		profile = np.exp(-1j * self.lambda_i * t) * (np.exp(exponent) - 1.)
		return np.multiply.outer(profile, self.f_star)


#
# helper functions
#

def _require_extension(problem:MultipointProblem, params:ExtensionParams):
	report = validate_extension(problem, params)
	if not report.extension_exists:
		raise ValidationError(f"No normal extension exists for these parameters: {report.maximality_note or 'validation failed'}.")
	return report


def _probe_vectors(problem:MultipointProblem, params:ExtensionParams) -> tuple:
	# boundary data of a candidate eigenfunction: f1* in ker A1 and f3* = W1 f1*
	kernel = kernel_basis(problem.A1, tol=problem.A1.tol_kernel)
	if kernel.shape[1] == 0:
		zero = np.zeros(problem.dim, dtype=complex)
		return zero, zero
	f1 = kernel[:, 0]
	return f1, params.W1.entries @ f1


#
# point spectrum
#

def halfline_resolvent_norms(problem:MultipointProblem, params:ExtensionParams, lam:complex) -> tuple:
	"""Closed-form squared L2 norms of u1 = e^{lambda (t - a1)} f1* and u3 = e^{lambda (t - a3)} f3*."""
	lam = complex(lam)
	f1, f3 = _probe_vectors(problem, params)
	if lam.real > 0:
		left = l2_norm_squared(TestFunction('left', [lam], [f1], anchor=problem.a1))
	else:
		left = np.inf if np.any(f1) else 0.
	if lam.real < 0:
		right = l2_norm_squared(TestFunction('right', [lam], [f3], anchor=problem.a3))
	else:
		right = np.inf if np.any(f3) else 0.
	return float(left), float(right)


def _growth_reason(lam:complex, left:float, right:float, tol_marginal:float) -> str:
	# the reason follows from the half-line whose candidate is not square-integrable and must match sign(Re lambda)
	by_sign = 'marginal' if abs(lam.real) <= tol_marginal else ('left-growth' if lam.real < 0 else 'right-growth')
	if np.isinf(left) and np.isinf(right):
		by_norms = 'marginal'
	elif np.isinf(left):
		by_norms = 'left-growth'
	elif np.isinf(right):
		by_norms = 'right-growth'
	else:
		raise NumericalError(f"Both half-line candidates are square-integrable at lambda = {lam:.6g} (||u1||^2 = {left:.4g}, ||u3||^2 = {right:.4g}).")
	if by_norms != by_sign and by_sign != 'marginal':
		raise NumericalError(f"Growth reason '{by_norms}' from the norms contradicts '{by_sign}' from Re lambda = {lam.real:.6g}.")
	return by_sign


def _classify_point(problem:MultipointProblem, params:ExtensionParams, lam:complex, tol_marginal:float) -> PointSpectrumVerdict:
	lam = complex(lam)
	left, right = halfline_resolvent_norms(problem, params, lam)
	reason = _growth_reason(lam, left, right, tol_marginal)
	return PointSpectrumVerdict(lam=lam, reason=reason, left_norm=left, right_norm=right)


def point_spectrum_check(problem:MultipointProblem, params:ExtensionParams, lam:complex, tol_marginal:float=TOL_MARGINAL) -> PointSpectrumVerdict:
	_require_extension(problem, params)
	return _classify_point(problem, params, lam, tol_marginal)


#
# continuous spectrum
#

def continuous_spectrum(problem:MultipointProblem, params:ExtensionParams, tol:float=TOL_KERNEL) -> ContinuousSpectrumCertificate:
	spectrum_a1 = problem.A1.eigenvalues
	spectrum_a3 = problem.A3.eigenvalues
	scale = max(1., problem.A1.norm, problem.A3.norm)

	# Re lambda in sigma(A1) and in sigma(A3) at once: only 0 survives for A1 <= 0 <= A3
	intersection = []
	for alpha in spectrum_a1:
		for beta in spectrum_a3:
			if abs(alpha - beta) <= tol * scale:
				intersection.append(float((alpha + beta) / 2))
	offending = [value for value in intersection if abs(value) > tol * scale]
	if offending:
		raise InconsistentCoefficientsError(f"sigma(A1) and sigma(A3) share non-zero points {offending}; the sign constraints are violated.")
	_require_extension(problem, params)
	return ContinuousSpectrumCertificate(ImaginaryAxis(), spectrum_a1, spectrum_a3, sorted(set(np.round(intersection, 15).tolist())))


def _truncated_norm(T:float, sign:str) -> float:
	# int over (a1 - T, a1) of |e^{-+(t - a1)} - 1|^2 dt
	if sign == 'printed':
		if 2 * T > EXP_OVERFLOW:
			raise RangeError(f"Truncated witness norm overflows at T = {T} (exponent {2 * T:.4g}).")
		return float(np.expm1(2 * T) / 2 - 2 * np.expm1(T) + T)
	return float(T + 2 * np.expm1(-T) - np.expm1(-2 * T) / 2)


def nonsurjectivity_witness(problem:MultipointProblem, params:ExtensionParams, lambda_i:float, T_list, sign:str='printed', f_star=None) -> NonSurjectivityWitness:
	if sign not in WITNESS_SIGNS:
		raise ValueError(f"[Error] Unknown witness sign '{sign}'. Use one of {', '.join(WITNESS_SIGNS)}.")
	T_list = [float(T) for T in T_list]
	if any(T <= 0 for T in T_list) or any(later <= earlier for earlier, later in zip(T_list, T_list[1:])):
		raise ValidationError(f"Truncation lengths must be positive and strictly ascending, got {T_list}.")

	kernel = kernel_basis(problem.A1, tol=problem.A1.tol_kernel)
	if kernel.shape[1] == 0:
		raise NoWitnessError("ker (-A1)^1/2 is trivial; the non-surjectivity witness needs a non-zero kernel vector.")
	if f_star is None:
		f_star = kernel[:, 0]
	else:
		f_star = np.asarray(f_star, dtype=complex)
		if np.linalg.norm(problem.A1.entries @ f_star) > 2 * problem.A1.tol_kernel * max(1., problem.A1.norm) * np.linalg.norm(f_star):
			raise ValidationError("Witness vector f* does not lie in ker (-A1)^1/2.")

	weight = float(np.vdot(f_star, f_star).real)
	values = [(T, _truncated_norm(T, sign) * weight) for T in T_list]
	logger.debug("Witness at lambda_i = %s (%s): %s", lambda_i, sign, values)
	return NonSurjectivityWitness(float(lambda_i), f_star, problem.a1, values, sign=sign)


#
# assembly
#

def full_halfline_spectrum(problem:MultipointProblem, params:ExtensionParams, grid=None) -> SpectrumResult:
	certificate = continuous_spectrum(problem, params)
	verdicts = [_classify_point(problem, params, lam, TOL_MARGINAL) for lam in ([] if grid is None else grid)]
	notes = []
	if verdicts:
		reasons = {reason: sum(verdict.reason == reason for verdict in verdicts) for reason in REASONS}
		notes.append(f"point spectrum sampled at {len(verdicts)} point(s), none an eigenvalue ({reasons})")
	return SpectrumResult(
		eigenvalues=[],
		point=EmptySet(),
		continuous=certificate.descriptor,
		residual=EmptySet(),
		provenance={
			'point': 'half-line point spectrum is empty (growth trichotomy)',
			'continuous': 'half-line continuous spectrum is iR (non-surjectivity witness)',
			'residual': 'normal operators have empty residual spectrum'
		},
		notes=notes,
		certificates=verdicts
	)
