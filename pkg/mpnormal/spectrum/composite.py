import logging

from typing import Optional

import numpy as np
import scipy.linalg as la

from mpnormal.config import TOL_MERGE
from mpnormal.errors import ValidationError
from mpnormal.extensions import MultipointProblem, ExtensionParams
from mpnormal.operators import UnitaryOperator
from mpnormal.spectrum.halfline import full_halfline_spectrum
from mpnormal.spectrum.interval import BranchWindow, interval_eigenvalues, eigenvalue_lattice
from mpnormal.spectrum.result import SpectrumResult
from mpnormal.spectrum.sets import EmptySet, AxisComplement, Union, merge_points


logger = logging.getLogger(__name__)

MEMBERSHIPS = ('point', 'continuous', 'residual', 'resolvent')


#
# components
#

def interval_spectrum(problem:MultipointProblem, W2:UnitaryOperator, window:Optional[BranchWindow]=None) -> SpectrumResult:
	window = BranchWindow.default(problem.tau) if window is None else window
	eigenvalues = interval_eigenvalues(problem, W2, window=window)
	return SpectrumResult(
		eigenvalues=eigenvalues,
		point=eigenvalue_lattice(problem, W2),
		# the interval part has pure point spectrum in finite dimension
		continuous=EmptySet(),
		residual=EmptySet(),
		provenance={
			'point': 'interval characteristic equation e^{-lambda tau} = mu, mu in sigma(W2* e^{-A2 tau})',
			'continuous': 'empty in finite dimension',
			'residual': 'normal operators have empty residual spectrum'
		}
	)


def direct_sum_point(first:SpectrumResult, second:SpectrumResult, tol:float=TOL_MERGE) -> list:
	# sigma_p of a direct sum is the union of the summands' point spectra
	return merge_points(first.points() + second.points(), tol=tol)


def block_diagonal_point(first, second) -> np.ndarray:
	return la.eigvals(la.block_diag(np.asarray(first), np.asarray(second)))


#
# composition
#

def full_spectrum(problem:MultipointProblem, params:ExtensionParams, window:Optional[BranchWindow]=None, grid=None) -> SpectrumResult:
	"""Spectrum of L_{W1 W2}, the orthogonal sum of the half-line part L_{W1} and the interval part L_{W2}."""
	halfline = full_halfline_spectrum(problem, params, grid=grid)
	interval = interval_spectrum(problem, params.W2, window=window)
	lattice = interval.point

	# sigma_c = ((sigma_p)^c intersected with iR) united with sigma_c of the interval part
	continuous = Union([AxisComplement(lattice), interval.continuous])
	notes = list(halfline.notes)
	on_axis = lattice.axis_bases()
	if on_axis:
		excluded = [ev.lam for ev in interval.eigenvalues if abs(ev.lam.real) <= TOL_MERGE]
		notes.append(
			f"iR excludes the interval eigenvalues on the axis, {', '.join(f'{base:.6g}' for base in on_axis)} + {lattice.shift:.6g} Z"
			f" ({len(excluded)} inside the window)"
		)

	result = SpectrumResult(
		# the half-line point spectrum is empty, so the direct sum keeps the interval eigenvalues as they are
		eigenvalues=interval.eigenvalues,
		point=lattice,
		continuous=continuous,
		residual=EmptySet(),
		provenance={
			'point': interval.provenance['point'],
			'continuous': f"(sigma_p)^c in iR from the half-line part ({halfline.provenance['continuous']}) united with the interval part ({interval.provenance['continuous']})",
			'residual': interval.provenance['residual']
		},
		notes=notes,
		certificates=halfline.certificates
	)
	violations = result.disjointness_violations()
	if violations:
		raise ValidationError(f"Point and continuous spectrum overlap at {violations[:3]}.")
	logger.info("Full spectrum: %d eigenvalue(s) in window, continuous '%s'.", len(result.eigenvalues), continuous.describe())
	return result


def membership(result:SpectrumResult, lam:complex, tol:float=TOL_MERGE) -> str:
	lam = complex(lam)
	if result.point.contains(lam, tol=tol):
		return 'point'
	if result.continuous.contains(lam, tol=tol):
		return 'continuous'
	if result.residual.contains(lam, tol=tol):
		return 'residual'
	return 'resolvent'


def componentwise_membership(halfline:SpectrumResult, interval:SpectrumResult, lam:complex, tol:float=TOL_MERGE) -> str:
	# point spectra add up and the half-line continuum survives wherever the interval part has no eigenvalue
	lam = complex(lam)
	if halfline.point.contains(lam, tol=tol) or interval.point.contains(lam, tol=tol):
		return 'point'
	if halfline.continuous.contains(lam, tol=tol) or interval.continuous.contains(lam, tol=tol):
		return 'continuous'
	return 'resolvent'
