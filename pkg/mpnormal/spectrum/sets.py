"""Symbolic spectral sets.

A continuum cannot be enumerated, so spectra are described by a small closed algebra of
descriptors: the empty set, the imaginary axis, finite point sets, branch lattices
{b + n * shift : n in Z}, complements within the imaginary axis, and unions. Membership at
a point is the universal query.
"""
from typing import Iterable

import numpy as np

from mpnormal.config import TOL_MERGE


def _pair(z:complex) -> list:
	return [float(np.real(z)), float(np.imag(z))]


def _unpair(pair) -> complex:
	return complex(pair[0], pair[1])


def merge_points(points:Iterable[complex], tol:float=TOL_MERGE) -> list:
	merged = []
	for point in points:
		point = complex(point)
		if all(abs(point - existing) > tol for existing in merged):
			merged.append(point)
	return merged


class SpectralSet:
	kind = 'set'

	def contains(self, z:complex, tol:float=TOL_MERGE) -> bool:
		raise NotImplementedError

	def describe(self) -> str:
		raise NotImplementedError

	def is_empty(self) -> bool:
		return False

	def serialize(self) -> dict:
		return {'kind': self.kind}

	def __repr__(self):
		return f'''<{self.__class__.__name__}: '{self.describe()}'>'''


class EmptySet(SpectralSet):
	kind = 'empty'

	def contains(self, z, tol=TOL_MERGE):
		return False

	def describe(self):
		return 'empty'

	def is_empty(self):
		return True


class ImaginaryAxis(SpectralSet):
	kind = 'imaginary-axis'

	def contains(self, z, tol=TOL_MERGE):
		return abs(complex(z).real) <= tol

	def describe(self):
		return 'iR'


class PointSet(SpectralSet):
	kind = 'points'

	def __init__(self, points:Iterable[complex], tol:float=TOL_MERGE):
		self.points = merge_points(points, tol=tol)

	def contains(self, z, tol=TOL_MERGE):
		return any(abs(complex(z) - point) <= tol for point in self.points)

	def describe(self):
		return 'empty' if not self.points else f'{{{len(self.points)} points}}'

	def is_empty(self):
		return len(self.points) == 0

	def on_axis(self, tol:float=TOL_MERGE) -> list:
		return [point for point in self.points if abs(point.real) <= tol]

	def serialize(self):
		return {'kind': self.kind, 'points': [_pair(point) for point in self.points]}


class EigenvalueLattice(SpectralSet):
	"""{b + n * shift : b in bases, n in Z}, the exact branch structure of the interval spectrum."""
	kind = 'lattice'

	def __init__(self, bases:Iterable[complex], shift:complex, tol:float=TOL_MERGE):
		self.shift = complex(shift)
		if self.shift == 0:
			raise ValueError("[Error] Lattice shift must be non-zero.")
		# reduce every base to its representative with offset in [0, 1) along the shift
		representatives = []
		for base in bases:
			offset = (complex(base) / self.shift).real
			representatives.append(complex(base) - np.floor(offset) * self.shift)
		self.bases = merge_points(representatives, tol=tol)

	def contains(self, z, tol=TOL_MERGE):
		for base in self.bases:
			steps = (complex(z) - base) / self.shift
			nearest = np.round(steps.real)
			if abs(steps - nearest) * abs(self.shift) <= tol:
				return True
		return False

	def describe(self):
		if not self.bases:
			return 'empty'
		return f'{{{len(self.bases)} branch(es) + {_format_complex(self.shift)} Z}}'

	def is_empty(self):
		return len(self.bases) == 0

	def axis_bases(self, tol:float=TOL_MERGE) -> list:
		# the shift is purely imaginary, so a branch meets iR iff its base does
		return [base for base in self.bases if abs(base.real) <= tol]

	def serialize(self):
		return {'kind': self.kind, 'bases': [_pair(base) for base in self.bases], 'shift': _pair(self.shift)}


class AxisComplement(SpectralSet):
	"""[excluded]^c intersected with iR."""
	kind = 'axis-complement'

	def __init__(self, excluded:SpectralSet):
		self.excluded = excluded

	def contains(self, z, tol=TOL_MERGE):
		return abs(complex(z).real) <= tol and not self.excluded.contains(z, tol=tol)

	def meets_axis(self, tol:float=TOL_MERGE) -> bool:
		if isinstance(self.excluded, EigenvalueLattice):
			return len(self.excluded.axis_bases(tol=tol)) > 0
		if isinstance(self.excluded, PointSet):
			return len(self.excluded.on_axis(tol=tol)) > 0
		if isinstance(self.excluded, Union):
			return any(AxisComplement(part).meets_axis(tol=tol) for part in self.excluded.parts)
		return not self.excluded.is_empty()

	def describe(self):
		return 'iR \\ points' if self.meets_axis() else 'iR'

	def serialize(self):
		return {'kind': self.kind, 'excluded': self.excluded.serialize()}


class Union(SpectralSet):
	kind = 'union'

	def __init__(self, parts:Iterable[SpectralSet]):
		self.parts = list(parts)

	def contains(self, z, tol=TOL_MERGE):
		return any(part.contains(z, tol=tol) for part in self.parts)

	def describe(self):
		descriptions = [part.describe() for part in self.parts if not part.is_empty()]
		return ' u '.join(descriptions) if descriptions else 'empty'

	def is_empty(self):
		return all(part.is_empty() for part in self.parts)

	def serialize(self):
		return {'kind': self.kind, 'parts': [part.serialize() for part in self.parts]}


def _format_complex(z:complex) -> str:
	return f'{z.real:.6g}{z.imag:+.6g}i'


def set_from_dict(description:dict) -> SpectralSet:
	kind = description.get('kind')
	if kind == 'empty':
		return EmptySet()
	if kind == 'imaginary-axis':
		return ImaginaryAxis()
	if kind == 'points':
		return PointSet(_unpair(pair) for pair in description['points'])
	if kind == 'lattice':
		return EigenvalueLattice((_unpair(pair) for pair in description['bases']), _unpair(description['shift']))
	if kind == 'axis-complement':
		return AxisComplement(set_from_dict(description['excluded']))
	if kind == 'union':
		return Union(set_from_dict(part) for part in description['parts'])
	raise ValueError(f"[Error] Unknown spectral set kind: '{kind}'.")
