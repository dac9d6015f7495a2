import math

from functools import lru_cache

import numpy as np

from numpy.polynomial.legendre import leggauss

from mpnormal.config import GAUSS_POINTS
from mpnormal.errors import ValidationError


@lru_cache(maxsize=8)
def _rule(points:int) -> tuple:
	return leggauss(points)


def gauss_nodes(interval:tuple, panels:int, points:int=GAUSS_POINTS) -> tuple:
	"""Nodes and weights of the composite Gauss-Legendre rule with equal panels."""
	start, end = (float(bound) for bound in interval)
	if not (np.isfinite(start) and np.isfinite(end)) or end <= start:
		raise ValidationError(f"Quadrature needs a finite interval with start < end, got ({start}, {end}).")
	nodes, weights = _rule(points)
	edges = np.linspace(start, end, panels + 1)
	half = (edges[1:] - edges[:-1]) / 2
	centres = (edges[1:] + edges[:-1]) / 2
	return (centres[:, None] + half[:, None] * nodes[None, :]).ravel(), (half[:, None] * weights[None, :]).ravel()


def quadrature_l2(function, interval:tuple, panels:int=None, points:int=GAUSS_POINTS) -> float:
	# squared L2 norm of a vectorized function (profiles return (n, dim), scalar functions (n,))
	if panels is None:
		panels = max(4, int(math.ceil(4 * (float(interval[1]) - float(interval[0])))))
	nodes, weights = gauss_nodes(interval, panels, points=points)
	values = np.asarray(function(nodes))
	squared = np.abs(values) ** 2
	if squared.ndim > 1:
		squared = squared.sum(axis=tuple(range(1, squared.ndim)))
	return float(weights @ squared)


def witness_quadrature(witness, T:float, panels:int=None, points:int=GAUSS_POINTS) -> float:
	# quadrature of |u(t)|^2 for the would-be solution over (a1 - T, a1)
	return quadrature_l2(witness.solution, (witness.a1 - T, witness.a1), panels=panels, points=points)
