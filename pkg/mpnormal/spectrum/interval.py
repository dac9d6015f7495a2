import logging
import math
import warnings

from typing import Optional

import numpy as np
import scipy.linalg as la

from mpnormal.boundary import TestFunction, phi1
from mpnormal.config import TOL_CERTIFICATE, TOL_COMMUTING, TOL_MERGE, TOL_RESOLVENT, EXP_OVERFLOW, UNDERFLOW, DEFAULT_BRANCHES
from mpnormal.errors import ValidationError, RangeError, PrecisionLossError, NearSingularError, PrecisionWarning
from mpnormal.extensions import MultipointProblem
from mpnormal.operators import UnitaryOperator, operator_exp, operator_exp_apply, commutator_norm
from mpnormal.spectrum.sets import EigenvalueLattice


logger = logging.getLogger(__name__)

LOG_UNDERFLOW = math.log(UNDERFLOW)
TWO_PI = 2 * np.pi


class BranchWindow:
	"""Finite set of branches n, given either as [n_min, n_max] or as a cutoff |Im lambda| <= im_bound."""
	def __init__(self, n_min:Optional[int]=None, n_max:Optional[int]=None, im_bound:Optional[float]=None):
		if im_bound is None and (n_min is None or n_max is None):
			raise ValidationError("Branch window needs either n_min and n_max or im_bound.")
		if im_bound is not None and (n_min is not None or n_max is not None):
			raise ValidationError("Branch window takes either a branch range or an |Im lambda| bound, not both.")
		self.n_min = None if n_min is None else int(n_min)
		self.n_max = None if n_max is None else int(n_max)
		self.im_bound = None if im_bound is None else float(im_bound)

	def __repr__(self):
		if self.im_bound is not None:
			return f'''<BranchWindow: |Im lambda| <= {self.im_bound:.6g}>'''
		return f'''<BranchWindow: n in [{self.n_min}, {self.n_max}]>'''

	@classmethod
	def default(cls, tau:float):
		return cls(im_bound=DEFAULT_BRANCHES * TWO_PI / tau)

	@classmethod
	def symmetric(cls, branches:int):
		return cls(n_min=-branches, n_max=branches)

	def is_empty(self) -> bool:
		if self.im_bound is not None:
			return self.im_bound < 0
		return self.n_min > self.n_max

	def serialize(self):
		if self.im_bound is not None:
			return {'im_bound': self.im_bound}
		return {'n_min': self.n_min, 'n_max': self.n_max}


def branch_range(window:BranchWindow, arg:float, tau:float) -> tuple:
	# Im lambda_n = -(arg + 2 pi n) / tau, so |Im lambda_n| <= B iff -B tau <= arg + 2 pi n <= B tau
	if window.im_bound is None:
		return window.n_min, window.n_max
	bound = window.im_bound * tau
	return int(math.ceil((-bound - arg) / TWO_PI)), int(math.floor((bound - arg) / TWO_PI))


class IntervalEigenvalue:
	def __init__(self, lam:complex, mu:complex, branch:int, eigvec:np.ndarray, conditioning:float, residual:float, log_abs_mu:float, arg_mu:float):
		self.lam = complex(lam)
		self.mu = complex(mu)
		self.branch = int(branch)
		self.eigvec = np.asarray(eigvec, dtype=complex)
		self.conditioning = float(conditioning)
		self.residual = float(residual)
		# ln|mu| and arg mu are kept separately since mu itself may underflow
		self.log_abs_mu = float(log_abs_mu)
		self.arg_mu = float(arg_mu)

	def __repr__(self):
		return f'''<IntervalEigenvalue: lambda={self.lam:.6g}, n={self.branch}, |mu|=e^{self.log_abs_mu:.4g}, residual={self.residual:.2e}>'''

	def serialize(self):
		return {
			're': self.lam.real, 'im': self.lam.imag, 'n': self.branch,
			'mu_re': self.mu.real, 'mu_im': self.mu.imag,
			'log_abs_mu': self.log_abs_mu, 'arg_mu': self.arg_mu,
			'residual': self.residual, 'conditioning': self.conditioning
		}


#
# characteristic equation
#

def monodromy(problem:MultipointProblem, W2:UnitaryOperator) -> np.ndarray:
	"""M = W2* e^{-A2 tau}, whose spectrum generates the interval eigenvalues through e^{-lambda tau} = mu."""
	if W2.dim != problem.dim:
		raise ValidationError(f"W2 dimension {W2.dim} does not match problem dimension {problem.dim}.")
	return W2.adjoint @ operator_exp(problem.A2, 0., problem.tau)


def characteristic_residual(M:np.ndarray, lam:complex, tau:float) -> float:
	# smallest singular value of e^{-lambda tau} I - M
	bracket = np.exp(-complex(lam) * tau) * np.eye(M.shape[0]) - M
	return float(la.svdvals(bracket)[-1])


def _principal_arg(z:complex) -> float:
	arg = float(np.angle(z)) % TWO_PI
	# angle() just below zero wraps to exactly 2 pi in floating point
	return 0. if arg >= TWO_PI else arg


def _clusters(values:np.ndarray, tol:float) -> list:
	# groups of indices whose values lie within tol of the group's first member
	remaining = list(range(len(values)))
	groups = []
	while remaining:
		anchor = remaining.pop(0)
		group = [anchor] + [index for index in remaining if abs(values[index] - values[anchor]) <= tol]
		remaining = [index for index in remaining if index not in group]
		groups.append(group)
	return groups


def _commuting_modes(problem:MultipointProblem, W2:UnitaryOperator) -> list:
	# W2 preserves every eigenspace of A2: diagonalize W2* per eigenspace, |mu| = e^{-alpha tau} exactly
	A2 = problem.A2
	modes = []
	for group in _clusters(A2.eigenvalues, tol=TOL_MERGE * max(1., A2.norm)):
		alpha = float(np.mean(A2.eigenvalues[group]))
		basis = A2.eigenvectors[:, group]
		block = basis.conj().T @ W2.adjoint @ basis
		triangular, vectors = la.schur(block, output='complex')
		for index in range(len(group)):
			phase = triangular[index, index]
			log_abs_mu = -alpha * problem.tau
			if log_abs_mu < LOG_UNDERFLOW:
				warnings.warn(
					f"[Warning] |mu| = e^{log_abs_mu:.4g} is below {UNDERFLOW:.0e}; ln|mu| is taken from sigma(A2) directly.",
					PrecisionWarning, stacklevel=3
				)
			modes.append({
				'mu': np.exp(log_abs_mu) * phase / abs(phase),
				'log_abs_mu': log_abs_mu,
				'arg': _principal_arg(phase),
				'vector': basis @ vectors[:, index],
				'conditioning': 1.
			})
	return modes


def _general_modes(M:np.ndarray) -> list:
	try:
		mus, left, right = la.eig(M, left=True, right=True)
	except la.LinAlgError:
		logger.warning("[Warning] Dense eigensolver failed on the monodromy, falling back to the Schur form.")
		triangular, _ = la.schur(M, output='complex')
		mus = np.diag(triangular)
		left = right = None

	scale = max(np.linalg.norm(M, ord=2), UNDERFLOW)
	modes = []
	for group in _clusters(mus, tol=TOL_MERGE * scale):
		mu = complex(np.mean(mus[group]))
		if abs(mu) < UNDERFLOW:
			raise PrecisionLossError(f"Monodromy eigenvalue mu = {mu:.3e} is below {UNDERFLOW:.0e}; ln|mu| is not representable.", mu=mu)

		if len(group) == 1 and right is not None:
			vectors = right[:, group]
			# eigenvalue condition number 1 / |y* x| for unit left and right vectors
			overlap = abs(np.vdot(left[:, group[0]], right[:, group[0]]))
			conditioning = 1. / overlap if overlap > 0 else np.inf
		else:
			# degenerate mu: every independent eigenvector of the cluster
			vectors = la.null_space(M - mu * np.eye(M.shape[0]), rcond=math.sqrt(TOL_MERGE))
			if vectors.shape[1] == 0:
				vectors = right[:, group[:1]] if right is not None else la.null_space(M - mu * np.eye(M.shape[0]), rcond=1e-6)
			conditioning = np.linalg.cond(vectors) if vectors.shape[1] > 0 else np.inf
			if vectors.shape[1] < len(group):
				logger.info("Defective monodromy eigenvalue mu = %s: %d eigenvector(s) for multiplicity %d.", mu, vectors.shape[1], len(group))

		for column in range(vectors.shape[1]):
			modes.append({
				'mu': mu,
				'log_abs_mu': math.log(abs(mu)),
				'arg': _principal_arg(mu),
				'vector': vectors[:, column] / np.linalg.norm(vectors[:, column]),
				'conditioning': float(conditioning)
			})
	return modes


def _monodromy_modes(problem:MultipointProblem, W2:UnitaryOperator, tol_commuting:float) -> tuple:
	with warnings.catch_warnings():
		# underflowing monodromy entries are expected on the commuting path
		warnings.simplefilter('ignore', PrecisionWarning)
		M = monodromy(problem, W2)
	commutator = commutator_norm(W2, problem.A2)
	commuting = commutator <= tol_commuting * max(1., problem.A2.norm)
	modes = _commuting_modes(problem, W2) if commuting else _general_modes(M)
	logger.debug("Monodromy of dimension %d: %d mode(s), commuting=%s (||[W2, A2]||_F = %.3e).", M.shape[0], len(modes), commuting, commutator)
	return M, modes


def interval_eigenvalues(problem:MultipointProblem, W2:UnitaryOperator, window:Optional[BranchWindow]=None, tol_commuting:float=TOL_COMMUTING) -> list:
	tau = problem.tau
	window = BranchWindow.default(tau) if window is None else window
	if window.is_empty():
		return []

	M, modes = _monodromy_modes(problem, W2, tol_commuting)
	scale = max(np.linalg.norm(M, ord=2), UNDERFLOW)
	eigenvalues = []
	for mode in modes:
		base = (mode['log_abs_mu'] + 1j * mode['arg']) / (problem.a2 - problem.b2)
		shift = TWO_PI * 1j / (problem.a2 - problem.b2)
		n_min, n_max = branch_range(window, mode['arg'], tau)
		for branch in range(n_min, n_max + 1):
			lam = base + branch * shift
			residual = characteristic_residual(M, lam, tau)
			if residual > TOL_CERTIFICATE * scale:
				logger.warning("[Warning] lambda = %s fails its characteristic certificate (%.3e).", lam, residual)
			eigenvalues.append(IntervalEigenvalue(
				lam, mode['mu'], branch, mode['vector'], mode['conditioning'], residual,
				log_abs_mu=mode['log_abs_mu'], arg_mu=mode['arg']
			))

	eigenvalues.sort(key=lambda ev: (ev.lam.real, ev.lam.imag))
	logger.info("Computed %d interval eigenvalue(s) over %s.", len(eigenvalues), window)
	return eigenvalues


def eigenvalue_lattice(problem:MultipointProblem, W2:UnitaryOperator, tol_commuting:float=TOL_COMMUTING) -> EigenvalueLattice:
	"""Untruncated interval point spectrum: one base per monodromy mode, whatever the branch window."""
	_, modes = _monodromy_modes(problem, W2, tol_commuting)
	return EigenvalueLattice(
		((mode['log_abs_mu'] + 1j * mode['arg']) / (problem.a2 - problem.b2) for mode in modes),
		shift=TWO_PI * 1j / (problem.a2 - problem.b2)
	)


#
# eigenfunctions and resolvent
#

def _check_time(problem:MultipointProblem, t:float):
	slack = 1e-12 * max(1., abs(problem.a2), abs(problem.b2))
	if not (problem.a2 - slack <= t <= problem.b2 + slack):
		raise ValidationError(f"t = {t} lies outside [{problem.a2}, {problem.b2}].")


def eigenfunction(problem:MultipointProblem, W2:UnitaryOperator, eigenvalue:IntervalEigenvalue, t:float) -> np.ndarray:
	# u2(t) = e^{-(A2 - lambda)(t - a2)} f2*
	_check_time(problem, t)
	return operator_exp_apply(problem.A2, eigenvalue.lam, t - problem.a2, eigenvalue.eigvec)


def _convolution_weights(rate:complex, lam:complex, alphas:np.ndarray, elapsed:float) -> np.ndarray:
	# int_0^T e^{(lambda - alpha)(T - s)} e^{c s} ds = (e^{cT} - e^{(lambda - alpha)T}) / (c - lambda + alpha),
	# factored around the larger exponent so stiff modes never form 0 * inf
	free = (lam - alphas) * elapsed
	forced = np.full_like(free, rate * elapsed)
	forced_leads = forced.real >= free.real
	leading = np.where(forced_leads, forced, free)
	trailing = np.where(forced_leads, free, forced)
	return elapsed * np.exp(leading) * phi1(trailing - leading)


def _convolution(problem:MultipointProblem, lam:complex, source:TestFunction, t:float) -> np.ndarray:
	# int_{a2}^{t} e^{-(A2 - lambda)(t - s)} f(s) ds, term by term in the eigenbasis of A2
	A2 = problem.A2
	elapsed = t - problem.a2
	if elapsed <= 0:
		return np.zeros(problem.dim, dtype=complex)
	largest = max(np.max((lam - A2.eigenvalues).real), np.max(np.real(source.rates))) * elapsed
	if largest > EXP_OVERFLOW:
		raise RangeError(f"Resolvent convolution overflows at t = {t}: exponent {largest:.4g}.")
	result = np.zeros(problem.dim, dtype=complex)
	for rate, vector in zip(source.rates, source.vectors):
		coefficients = A2.eigenvectors.conj().T @ vector
		weights = _convolution_weights(complex(rate), lam, A2.eigenvalues, elapsed)
		result += A2.eigenvectors @ (weights * coefficients)
	return result


class ResolventSolution:
	"""u2 = (L_{W2} - lambda)^{-1} f2 on [a2, b2]."""
	def __init__(self, problem:MultipointProblem, lam:complex, source:TestFunction, f_star:np.ndarray):
		self.problem = problem
		self.lam = complex(lam)
		self.source = source
		self.f_star = f_star

	def __repr__(self):
		return f'''<ResolventSolution: lambda={self.lam:.6g}, ||f2*||={np.linalg.norm(self.f_star):.4g}>'''

	def __call__(self, t:float) -> np.ndarray:
		_check_time(self.problem, t)
		homogeneous = operator_exp_apply(self.problem.A2, self.lam, t - self.problem.a2, self.f_star, drop=0.)
		return homogeneous + _convolution(self.problem, self.lam, self.source, t)

	def sample(self, times) -> np.ndarray:
		return np.array([self(t) for t in np.atleast_1d(times)])


def _nearest_branch(problem:MultipointProblem, M:np.ndarray, lam:complex) -> tuple:
	mus = la.eigvals(M)
	target = np.exp(-lam * problem.tau)
	mu = complex(mus[int(np.argmin(np.abs(mus - target)))])
	if mu == 0:
		return mu, None
	# lambda (a2 - b2) = ln|mu| + i (arg mu + 2 pi n)
	phase = (lam * (problem.a2 - problem.b2)).imag
	return mu, int(round((phase - _principal_arg(mu)) / TWO_PI))


def resolvent_apply(problem:MultipointProblem, W2:UnitaryOperator, lam:complex, source:TestFunction, tol:float=TOL_RESOLVENT) -> ResolventSolution:
	if source.interval != 'middle' or source.anchor != problem.a2 or source.end != problem.b2:
		raise ValidationError(f"Resolvent source must be a middle profile on ({problem.a2}, {problem.b2}), got {source}.")
	if source.dim != problem.dim:
		raise ValidationError(f"Source dimension {source.dim} does not match problem dimension {problem.dim}.")

	lam = complex(lam)
	tau = problem.tau
	M = monodromy(problem, W2)
	bracket = np.exp(-lam * tau) * np.eye(problem.dim) - M
	smallest = la.svdvals(bracket)[-1]
	if smallest <= tol * max(1., np.linalg.norm(M, ord=2)):
		mu, branch = _nearest_branch(problem, M, lam)
		raise NearSingularError(
			f"lambda = {lam:.6g} is within {tol:.0e} of the interval spectrum "
			f"(smallest singular value {smallest:.3e}, mu = {mu:.6g}, n = {branch}).",
			mu=mu, branch=branch
		)

	# (e^{-lambda tau} - M) f2* = W2* e^{-lambda tau} int_{a2}^{b2} e^{-(A2 - lambda)(b2 - s)} f2(s) ds
	particular = _convolution(problem, lam, source, problem.b2)
	f_star = la.solve(bracket, W2.adjoint @ (np.exp(-lam * tau) * particular))
	logger.debug("Resolvent at lambda = %s: ||f2*|| = %.4g, smallest singular value %.3e.", lam, np.linalg.norm(f_star), smallest)
	return ResolventSolution(problem, lam, source, f_star)
