import time

import numpy as np
import pytest

from mpnormal.errors import ValidationError
from mpnormal.extensions import build_problem
from mpnormal.operators import UnitaryOperator
from mpnormal.oracle import finite_difference
from mpnormal.oracle import (
	SCHEMES, gauss_nodes, quadrature_l2, assemble, fd_interval_eigenvalues, match_eigenvalues, filter_spurious, grid_sweep,
	normality_probe, normality_trend, neumann_eigenvalues, build_example35
)
from mpnormal.spectrum import BranchWindow, interval_eigenvalues

from conftest import make_unitary


def within_resolved_window(problem, W2, result, fraction=.1):
	# analytic eigenvalues with |Im lambda| <= fraction * m / tau
	bound = fraction * result.grid_size / problem.tau
	return interval_eigenvalues(problem, W2, BranchWindow(im_bound=bound))


#
# quadrature
#

def test_gauss_exponential():
	value = quadrature_l2(np.exp, (0., 1.))
	assert value == pytest.approx((np.e ** 2 - 1) / 2, rel=1e-12)
	assert value == pytest.approx(3.19453, abs=1e-5)


def test_gauss_weights_sum():
	nodes, weights = gauss_nodes((-2., 3.), panels=3, points=8)
	assert len(nodes) == len(weights) == 24
	assert weights.sum() == pytest.approx(5.)
	assert np.all((nodes > -2.) & (nodes < 3.))


def test_gauss_interval():
	with pytest.raises(ValidationError):
		gauss_nodes((1., 0.), panels=2)
	with pytest.raises(ValidationError):
		gauss_nodes((0., np.inf), panels=2)


#
# discretization
#

def test_grid_guards(scalar_periodic, diag_2x2):
	problem, params = scalar_periodic
	with pytest.raises(ValidationError):
		assemble(problem, params.W2, 8)
	with pytest.raises(ValidationError):
		assemble(diag_2x2[0], diag_2x2[1].W2, 4096)
	with pytest.raises(ValueError):
		assemble(problem, params.W2, 64, scheme='spectral')


def test_upwind_ring_closure(scalar_phase):
	problem, params = scalar_phase
	P, Q = assemble(problem, params.W2, 16, scheme='upwind')
	h = problem.tau / 16
	# the last row couples back to u_0 through W2
	assert P[-1, 0] == pytest.approx(1j / h)
	np.testing.assert_allclose(Q, np.eye(16))


@pytest.mark.parametrize('scheme', ['box', 'central'])
def test_periodic_agreement(scalar_periodic, scheme):
	problem, params = scalar_periodic
	result = fd_interval_eigenvalues(problem, params.W2, 128, scheme=scheme, estimate_order=False)
	matches = match_eigenvalues(within_resolved_window(problem, params.W2, result), result.eigenvalues)
	assert len(matches) >= 5
	assert max(match.relative_error for match in matches) <= 5e-3


def test_diag_agreement(diag_2x2):
	problem, params = diag_2x2
	result = fd_interval_eigenvalues(problem, params.W2, 256)
	matches = match_eigenvalues(within_resolved_window(problem, params.W2, result), result.reliable())
	assert max(match.relative_error for match in matches) <= 5e-3
	assert 1.5 <= result.order_estimate <= 2.5


def test_upwind_order(scalar_periodic):
	problem, params = scalar_periodic
	result = fd_interval_eigenvalues(problem, params.W2, 256, scheme='upwind')
	assert .8 <= result.order_estimate <= 1.3


def test_example_agreement():
	problem, params = build_example35(4, psi=np.pi / 2)
	result = fd_interval_eigenvalues(problem, params.W2, 128, estimate_order=False)
	real_parts = np.sort(result.reliable().real)
	for alpha in 1. + neumann_eigenvalues(4)[:2]:
		assert np.min(np.abs(real_parts - alpha)) <= 5e-3 * alpha


@pytest.mark.parametrize('scheme', SCHEMES)
def test_ring_matches_dense(diag_2x2, scheme):
	problem, params = diag_2x2
	ring = fd_interval_eigenvalues(problem, params.W2, 32, scheme=scheme, estimate_order=False)
	dense = fd_interval_eigenvalues(problem, params.W2, 32, scheme=scheme, estimate_order=False, dense=True)
	assert len(ring.eigenvalues) + ring.infinite_count == 64
	assert ring.infinite_count == (2 if scheme == 'box' else 0)
	for value in ring.eigenvalues[np.abs(ring.eigenvalues) <= 200.]:
		assert np.min(np.abs(dense.eigenvalues - value)) <= 1e-8 * max(1., abs(value))


def test_noncommuting_uses_dense(rng):
	problem = build_problem(-1., 0., 1., 2., A1=np.diag([-1., 0.]), A2=np.diag([1., 3.]), A3=np.diag([0., 2.]))
	W2 = UnitaryOperator(make_unitary(rng, 2))
	assert finite_difference._ring_modes(problem, W2) is None
	result = fd_interval_eigenvalues(problem, W2, 32, estimate_order=False)
	np.testing.assert_allclose(result.eigenvalues, fd_interval_eigenvalues(problem, W2, 32, estimate_order=False, dense=True).eigenvalues)


def test_diag_fine_grid_budget(diag_2x2):
	problem, params = diag_2x2
	start = time.perf_counter()
	result = fd_interval_eigenvalues(problem, params.W2, 1024)
	elapsed = time.perf_counter() - start
	analytic = interval_eigenvalues(problem, params.W2, BranchWindow(im_bound=40.))
	assert len(analytic) == 14
	matches = match_eigenvalues(analytic, result.reliable())
	assert max(match.relative_error for match in matches) <= 5e-3
	assert .8 <= result.order_estimate <= 2.5
	assert elapsed < 30.



@pytest.mark.slow
def test_periodic_fine_grid(scalar_periodic):
	problem, params = scalar_periodic
	result = fd_interval_eigenvalues(problem, params.W2, 1024)
	matches = match_eigenvalues(within_resolved_window(problem, params.W2, result), result.eigenvalues)
	assert max(match.relative_error for match in matches) <= 5e-3
	assert 1.5 <= result.order_estimate <= 2.5


def test_match_requires_values():
	with pytest.raises(ValidationError):
		match_eigenvalues([1j], [])


#
# spurious modes
#

def test_filter_spurious(scalar_periodic):
	problem, params = scalar_periodic
	result = fd_interval_eigenvalues(problem, params.W2, 64, estimate_order=False)
	certified, spurious = filter_spurious(result, problem, params.W2)
	assert len(certified) + len(spurious) == len(result.eigenvalues)
	assert len(certified) >= 3
	assert len(spurious) > 0
	# every certified value lies next to a point of 2 pi i Z
	for value in certified:
		k = value.imag / (2 * np.pi)
		assert abs(value - 2j * np.pi * round(k)) <= 2e-2


#
# sweeps and normality
#

def test_grid_sweep_sequential(diag_2x2):
	problem, params = diag_2x2
	results = grid_sweep(problem, params.W2, [32, 64], processes=1)
	assert [result.grid_size for result in results] == [32, 64]
	assert all(np.isnan(result.order_estimate) for result in results)


def test_grid_sweep_guards(diag_2x2):
	with pytest.raises(ValidationError):
		grid_sweep(diag_2x2[0], diag_2x2[1].W2, [32, 8], processes=1)


def test_normality_commuting(scalar_periodic, diag_2x2):
	assert normality_probe(scalar_periodic[0], scalar_periodic[1].W2, 32) <= 1e-12
	assert normality_probe(diag_2x2[0], diag_2x2[1].W2, 32) <= 1e-12


def test_normality_trend(rng):
	problem = build_problem(-1., 0., 1., 2., A1=np.zeros((2, 2)), A2=np.diag([1., 3.]), A3=np.zeros((2, 2)))
	W2 = UnitaryOperator(make_unitary(rng, 2), name='W2')
	trend = normality_trend(problem, W2, [16, 32])
	assert [row['m'] for row in trend] == [16, 32]
	assert all(row['commutator'] > 0. for row in trend)
	assert all(row['probe'] > 1e-8 for row in trend)


#
# Galerkin example
#

def test_example_single_mode():
	problem, params = build_example35(1)
	np.testing.assert_allclose(problem.A1.entries, [[0.]])
	np.testing.assert_allclose(problem.A2.entries, [[1.]])
	np.testing.assert_allclose(problem.A3.entries, [[0.]])
	assert params.W1.is_unitary and params.W2.is_unitary


def test_example_four_modes():
	problem, _ = build_example35(4)
	np.testing.assert_allclose(problem.A2.eigenvalues, [1., 10.8696, 40.4784, 89.8264], atol=1e-4)
	assert (problem.a1, problem.a2, problem.b2, problem.a3) == (-1., -.5, .5, 1.)


def test_example_mode_count():
	with pytest.raises(ValidationError):
		build_example35(0)
