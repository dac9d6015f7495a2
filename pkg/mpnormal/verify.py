"""Verification suites run by `mpnormal verify`, each returning measured checks."""
import logging

from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from mpnormal.boundary import (
	TestFunction, boundary_maps_halfline, green_identity_residual, green_identity_residual_interval, surjectivity_witness
)
from mpnormal.config import TOL_MARGINAL
from mpnormal.errors import NoWitnessError
from mpnormal.extensions import validate_extension
from mpnormal.formats import ProblemConfig
from mpnormal.oracle import fd_interval_eigenvalues, match_eigenvalues, filter_spurious, witness_quadrature
from mpnormal.spectrum import interval_eigenvalues, point_spectrum_check, nonsurjectivity_witness


logger = logging.getLogger(__name__)

SUITES = ('green', 'halfline', 'oracle')
WITNESS_LENGTHS = (1., 2., 4., 8.)


@dataclass
class Check:
	suite: str
	name: str
	passed: bool
	value: float
	threshold: Optional[float] = None
	detail: str = ''

	def __str__(self):
		threshold = '' if self.threshold is None else f' (threshold {self.threshold:.1e})'
		detail = f' {self.detail}' if self.detail else ''
		return f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}/{self.name}: {self.value:.3e}{threshold}{detail}"

	def to_dict(self):
		return asdict(self)


#
# random exponential profiles
#

def _random_vectors(rng:np.random.Generator, count:int, dim:int) -> np.ndarray:
	return rng.normal(size=(count, dim)) + 1j * rng.normal(size=(count, dim))


def random_profile(rng:np.random.Generator, interval:str, dim:int, anchor:float, end:Optional[float]=None, terms:int=2) -> TestFunction:
	# rates with |Re c| in [0.1, 5] and the sign the interval requires
	magnitudes = rng.uniform(.1, 5., size=terms)
	sign = {'left': 1., 'right': -1.}.get(interval, rng.choice([-1., 1.]))
	rates = sign * magnitudes + 1j * rng.uniform(-5., 5., size=terms)
	return TestFunction(interval, rates, _random_vectors(rng, terms, dim), anchor=anchor, end=end)


#
# suites
#

def green_suite(config:ProblemConfig, samples:int=100, seed:int=0) -> list:
	rng = np.random.default_rng(seed)
	problem = config.problem
	dim = problem.dim

	halfline_worst, interval_worst = 0., 0.
	for _ in range(samples):
		u = (random_profile(rng, 'left', dim, problem.a1), random_profile(rng, 'right', dim, problem.a3))
		v = (random_profile(rng, 'left', dim, problem.a1), random_profile(rng, 'right', dim, problem.a3))
		scale = 1. + max(np.abs(profile.vectors).max() for profile in u + v)
		halfline_worst = max(halfline_worst, abs(green_identity_residual(u, v)) / scale)

		u_mid = random_profile(rng, 'middle', dim, problem.a2, end=problem.b2)
		v_mid = random_profile(rng, 'middle', dim, problem.a2, end=problem.b2)
		scale = 1. + max(np.abs(u_mid.vectors).max(), np.abs(v_mid.vectors).max())
		interval_worst = max(interval_worst, abs(green_identity_residual_interval(u_mid, v_mid)) / scale)

	roundtrip_worst = 0.
	for _ in range(samples):
		f, g = _random_vectors(rng, 2, dim)
		pair = boundary_maps_halfline(*surjectivity_witness(f, g, a1=problem.a1, a3=problem.a3))
		roundtrip_worst = max(roundtrip_worst, pair.distance(f, g) / max(1., np.abs(f).max(), np.abs(g).max()))

	return [
		Check('green', 'halfline-identity', halfline_worst <= 1e-10, halfline_worst, 1e-10, f'over {samples} pairs'),
		Check('green', 'interval-identity', interval_worst <= 1e-10, interval_worst, 1e-10, f'over {samples} pairs'),
		Check('green', 'surjectivity-roundtrip', roundtrip_worst <= 1e-13, roundtrip_worst, 1e-13, f'over {samples} draws')
	]


def halfline_suite(config:ProblemConfig, samples:int=200, seed:int=0) -> list:
	rng = np.random.default_rng(seed)
	problem, params = config.problem, config.params

	report = validate_extension(problem, params)
	if not report.extension_exists:
		return [Check('halfline', 'extension', False, float('nan'), None, report.maximality_note or 'no normal extension')]

	inconsistent = 0
	for lam in rng.uniform(-5., 5., size=samples) + 1j * rng.uniform(-5., 5., size=samples):
		verdict = point_spectrum_check(problem, params, lam)
		expected = 'marginal' if abs(lam.real) <= TOL_MARGINAL else ('left-growth' if lam.real < 0 else 'right-growth')
		if verdict.verdict != 'not eigenvalue' or verdict.reason != expected:
			inconsistent += 1
	checks = [Check('halfline', 'point-spectrum-empty', inconsistent == 0, float(inconsistent), 0., f'inconsistent verdicts over {samples} samples')]

	try:
		witness = nonsurjectivity_witness(problem, params, lambda_i=float(rng.uniform(-5., 5.)), T_list=WITNESS_LENGTHS, sign=config.options.get('witness_sign', 'printed'))
	except NoWitnessError as error:
		checks.append(Check('halfline', 'witness', False, float('nan'), None, str(error)))
		return checks
	checks.append(Check('halfline', 'witness-increasing', witness.is_strictly_increasing(), witness.truncated_norms[-1][1], None, f'T in {list(WITNESS_LENGTHS)}'))
	deviation = max(
		abs(witness_quadrature(witness, T) - value) / abs(value)
		for T, value in witness.truncated_norms
	)
	checks.append(Check('halfline', 'witness-quadrature', deviation <= 1e-6, deviation, 1e-6, 'relative'))
	return checks


def oracle_suite(config:ProblemConfig) -> list:
	problem, W2 = config.problem, config.params.W2
	m = config.options.get('grid', 1024)
	scheme = config.options.get('scheme', 'box')
	result = fd_interval_eigenvalues(problem, W2, m, scheme=scheme)

	# analytic eigenvalues the grid resolves
	bound = m / (10 * problem.tau)
	analytic = [ev for ev in interval_eigenvalues(problem, W2, window=config.window()) if abs(ev.lam.imag) <= bound]
	matches = match_eigenvalues(analytic, result.eigenvalues) if analytic else []
	worst = max((match.relative_error for match in matches), default=0.)
	certified, spurious = filter_spurious(result, problem, W2)
	order = result.order_estimate
	return [
		Check('oracle', 'eigenvalue-agreement', bool(matches) and worst <= 5e-3, worst, 5e-3, f'{len(matches)} analytic eigenvalue(s) with |Im| <= {bound:.4g}, {scheme} m={m}'),
		Check('oracle', 'order-estimate', bool(np.isfinite(order)) and .8 <= order <= 2.5, order, None, 'Richardson over m/4, m/2, m in [0.8, 2.5]'),
		Check('oracle', 'certified-modes', len(certified) > 0, float(len(certified)), None, f'{len(spurious)} spurious of {len(result.eigenvalues)}')
	]


def run_suites(config:ProblemConfig, suite:str='all', samples:Optional[int]=None, seed:int=0) -> list:
	selected = SUITES if suite == 'all' else (suite,)
	checks = []
	for name in selected:
		logger.info("Running the %s suite on '%s'.", name, config.name)
		if name == 'green':
			checks += green_suite(config, samples=samples or 100, seed=seed)
		elif name == 'halfline':
			checks += halfline_suite(config, samples=samples or 200, seed=seed)
		elif name == 'oracle':
			checks += oracle_suite(config)
		else:
			raise ValueError(f"[Error] Unknown suite '{name}'. Use one of {', '.join(SUITES)} or all.")
	return checks
