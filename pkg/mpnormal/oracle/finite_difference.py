"""Dense one-step discretizations of u' + A2 u = lambda u on (a2, b2) with u(b2) = W2 u(a2).

Nodes t_j = a2 + j h, h = tau / m, carry unknowns u_0, ..., u_{m-1}; the closing value
u_m = W2 u_0 is eliminated into the last row, so every scheme is an (m dim) x (m dim)
(generalized) eigenproblem.
"""
import logging
import multiprocessing as mp

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

from mpnormal.config import MAX_FD_SIZE, TOL_COMMUTING, TOL_MERGE
from mpnormal.errors import ValidationError
from mpnormal.extensions import MultipointProblem
from mpnormal.operators import UnitaryOperator, commutator_norm
from mpnormal.spectrum import monodromy


logger = logging.getLogger(__name__)

SCHEMES = ('box', 'upwind', 'central')
MIN_GRID = 16
RELIABLE_FRACTION = 0.2  # |Im lambda| <= 0.2 m / tau is resolved by the grid


@dataclass
class FDEigenResult:
	grid_size: int
	scheme: str
	eigenvalues: np.ndarray
	order_estimate: float = float('nan')
	infinite_count: int = 0
	tau: float = 1.

	def __repr__(self):
		return f'''<FDEigenResult ({self.scheme}, m={self.grid_size}): {len(self.eigenvalues)} eigenvalue(s), order={self.order_estimate:.3g}>'''

	@property
	def reliable_bound(self) -> float:
		return RELIABLE_FRACTION * self.grid_size / self.tau

	def reliable(self) -> np.ndarray:
		return self.eigenvalues[np.abs(self.eigenvalues.imag) <= self.reliable_bound]


@dataclass
class EigenvalueMatch:
	analytic: complex
	discrete: complex
	error: float
	relative_error: float


#
# discretization
#

def _check_grid(problem:MultipointProblem, W2:UnitaryOperator, m:int):
	if m < MIN_GRID:
		raise ValidationError(f"Grid size m = {m} is below the minimum of {MIN_GRID}.")
	if problem.dim * m > MAX_FD_SIZE:
		raise ValidationError(f"Discretized system of size {problem.dim * m} exceeds the dense limit of {MAX_FD_SIZE}.")
	if W2.dim != problem.dim:
		raise ValidationError(f"W2 dimension {W2.dim} does not match problem dimension {problem.dim}.")


def _shift(W2:UnitaryOperator, m:int, offset:int=1) -> np.ndarray:
	# (S u)_j = u_{j + offset}, with u_{j + m} = W2 u_j closing the ring
	dim = W2.dim
	S = np.zeros((m * dim, m * dim), dtype=complex)
	identity = np.eye(dim)
	for row in range(m):
		column = row + offset
		if 0 <= column < m:
			block = identity
		elif column >= m:
			column, block = column - m, W2.entries
		else:
			column, block = column + m, W2.adjoint
		S[row * dim:(row + 1) * dim, column * dim:(column + 1) * dim] = block
	return S


def assemble(problem:MultipointProblem, W2:UnitaryOperator, m:int, scheme:str='box') -> tuple:
	"""Returns the pencil (P, Q) with P v = lambda Q v."""
	if scheme not in SCHEMES:
		raise ValueError(f"[Error] Unknown scheme '{scheme}'. Use one of {', '.join(SCHEMES)}.")
	_check_grid(problem, W2, m)
	h = problem.tau / m
	identity = np.eye(m * problem.dim)
	coefficients = la.block_diag(*([problem.A2.entries] * m))
	forward = _shift(W2, m, offset=1)

	if scheme == 'box':
		# midpoint rule on every cell, second order
		average = (forward + identity) / 2
		return (forward - identity) / h + coefficients @ average, average
	if scheme == 'upwind':
		return (forward - identity) / h + coefficients, identity
	backward = _shift(W2, m, offset=-1)
	return (forward - backward) / (2 * h) + coefficients, identity


def upwind_matrix(problem:MultipointProblem, W2:UnitaryOperator, m:int) -> np.ndarray:
	matrix, _ = assemble(problem, W2, m, scheme='upwind')
	return matrix


def _ring_modes(problem:MultipointProblem, W2:UnitaryOperator) -> Optional[list]:
	# (alpha, w) per joint eigenvector of A2 and W2, or None when they do not commute
	A2 = problem.A2
	if commutator_norm(W2, A2) > TOL_COMMUTING * max(1., A2.norm):
		return None
	alphas = A2.eigenvalues
	breaks = np.flatnonzero(np.diff(alphas) > TOL_MERGE * max(1., A2.norm)) + 1
	modes = []
	for group in np.split(np.arange(len(alphas)), breaks):
		basis = A2.eigenvectors[:, group]
		block = basis.conj().T @ W2.entries @ basis
		alpha = float(np.mean(alphas[group]))
		modes += [(alpha, complex(w)) for w in la.eigvals(block)]
	return modes


def _ring_eigenvalues(modes:list, m:int, h:float, scheme:str) -> np.ndarray:
	"""Eigenvalues of the assembled pencil when A2 and W2 commute.

	On a joint eigenvector (alpha, w) the shift S acts on v_j = sigma^j x with sigma^m = w,
	so each of the m roots sigma gives one eigenvalue of the ring in closed form.
	"""
	values = []
	for alpha, w in modes:
		sigma = np.exp(1j * (np.angle(w) + 2 * np.pi * np.arange(m)) / m)
		if scheme == 'box':
			with np.errstate(divide='ignore', invalid='ignore'):
				ring = np.where(np.abs(sigma + 1) > 1e-12, 2 * (sigma - 1) / (h * (sigma + 1)), np.inf)
		elif scheme == 'upwind':
			ring = (sigma - 1) / h
		else:
			ring = (sigma - 1 / sigma) / (2 * h)
		values.append(alpha + ring)
	return np.concatenate(values)


def _solve(problem:MultipointProblem, W2:UnitaryOperator, m:int, scheme:str, dense:bool=False) -> tuple:
	modes = None if dense else _ring_modes(problem, W2)
	if modes is not None:
		if scheme not in SCHEMES:
			raise ValueError(f"[Error] Unknown scheme '{scheme}'. Use one of {', '.join(SCHEMES)}.")
		_check_grid(problem, W2, m)
		values = _ring_eigenvalues(modes, m, problem.tau / m, scheme)
	else:
		P, Q = assemble(problem, W2, m, scheme=scheme)
		if scheme == 'box':
			values = la.eig(P, Q, right=False)
		else:
			values = la.eigvals(P)
	finite = np.isfinite(values)
	values = values[finite]
	return values[np.lexsort((values.imag, values.real))], int(np.sum(~finite))


def _richardson_order(coarsest:np.ndarray, coarse:np.ndarray, fine:np.ndarray, bound:float) -> float:
	# median of log2(|l_{m/4} - l_{m/2}| / |l_{m/2} - l_m|) over eigenvalues tracked across the three grids
	orders = []
	for value in fine[np.abs(fine.imag) <= bound]:
		middle = coarse[np.argmin(np.abs(coarse - value))]
		outer = coarsest[np.argmin(np.abs(coarsest - value))]
		step_fine, step_coarse = abs(middle - value), abs(outer - middle)
		if step_fine > 1e-13 * max(1., abs(value)) and step_coarse > step_fine:
			orders.append(np.log2(step_coarse / step_fine))
	return float(np.median(orders)) if orders else float('nan')


def fd_interval_eigenvalues(problem:MultipointProblem, W2:UnitaryOperator, m:int, scheme:str='box', estimate_order:bool=True, dense:bool=False) -> FDEigenResult:
	"""Eigenvalues of the m-cell discretization; dense=True always runs the full (generalized) eigensolver."""
	eigenvalues, infinite = _solve(problem, W2, m, scheme, dense=dense)
	order = float('nan')
	if estimate_order and m // 4 >= MIN_GRID:
		coarse, _ = _solve(problem, W2, m // 2, scheme, dense=dense)
		coarsest, _ = _solve(problem, W2, m // 4, scheme, dense=dense)
		order = _richardson_order(coarsest, coarse, eigenvalues, bound=RELIABLE_FRACTION * (m // 4) / problem.tau)
	logger.info("FD oracle (%s, m=%d): %d finite eigenvalue(s), %d infinite, order %.3g.", scheme, m, len(eigenvalues), infinite, order)
	return FDEigenResult(grid_size=m, scheme=scheme, eigenvalues=eigenvalues, order_estimate=order, infinite_count=infinite, tau=problem.tau)


#
# comparison with the analytic spectrum
#

def match_eigenvalues(analytic, discrete) -> list:
	discrete = np.asarray(discrete, dtype=complex)
	if discrete.size == 0:
		raise ValidationError("No discrete eigenvalues to match against.")
	matches = []
	for value in analytic:
		value = complex(getattr(value, 'lam', value))
		nearest = complex(discrete[np.argmin(np.abs(discrete - value))])
		error = abs(nearest - value)
		matches.append(EigenvalueMatch(value, nearest, error, error / max(1., abs(value))))
	return matches


def filter_spurious(result:FDEigenResult, problem:MultipointProblem, W2:UnitaryOperator, tol:float=1e-2) -> tuple:
	"""Splits discrete eigenvalues into (certified, spurious) by the characteristic residual.

	A discrete lambda is certified when sigma_min(e^{-lambda tau} I - M) <= tol |e^{-lambda tau}|.
	"""
	M = monodromy(problem, W2)
	certified, spurious = [], []
	for value in result.eigenvalues:
		with np.errstate(over='ignore', under='ignore'):
			scale = abs(np.exp(-value * problem.tau))
		if not np.isfinite(scale) or scale == 0.:
			spurious.append(value)
			continue
		bracket = np.exp(-value * problem.tau) * np.eye(problem.dim) - M
		residual = la.svdvals(bracket)[-1]
		(certified if residual <= tol * scale else spurious).append(value)
	logger.debug("Certified %d of %d discrete eigenvalue(s) at tolerance %.1e.", len(certified), len(result.eigenvalues), tol)
	return np.array(certified, dtype=complex), np.array(spurious, dtype=complex)


def grid_sweep(problem:MultipointProblem, W2:UnitaryOperator, grids, scheme:str='box', processes:Optional[int]=None) -> list:
	grids = [int(m) for m in grids]
	for m in grids:
		_check_grid(problem, W2, m)
	num_cpus = max(1, mp.cpu_count() // 2) if processes is None else processes  # parallelize across half of all CPUs
	arguments = [(problem, W2, m, scheme, False) for m in grids]
	if num_cpus == 1 or len(grids) == 1:
		return [fd_interval_eigenvalues(*argument) for argument in arguments]
	with mp.Pool(processes=min(num_cpus, len(grids))) as pool:
		return pool.starmap(fd_interval_eigenvalues, arguments)
