from typing import Optional, Union

import numpy as np

from mpnormal.errors import ValidationError, IntegrabilityError


INTERVALS = ('left', 'middle', 'right')


def phi1(z):
	# (e^z - 1) / z, continuous at z = 0
	z = np.asarray(z, dtype=complex)
	small = np.abs(z) < 1e-5
	safe = np.where(small, 1., z)
	return np.where(small, 1. + z / 2. + z * z / 6., np.expm1(safe) / safe)


class TestFunction:
	"""Exponential profile u(t) = sum_j e^{c_j (t - anchor)} h_j on one of the three intervals.

	Left profiles live on (-inf, anchor) and need Re c > 0, right profiles live on
	(anchor, +inf) and need Re c < 0, middle profiles live on (anchor, end).
	"""
	__test__ = False  # not a pytest class

	def __init__(self, interval:str, rates, vectors, anchor:float=0., end:Optional[float]=None):
		if interval not in INTERVALS:
			raise ValueError(f"[Error] Unknown interval: '{interval}'.")
		self.interval = interval
		self.rates = np.atleast_1d(np.asarray(rates, dtype=complex))
		self.vectors = np.atleast_2d(np.asarray(vectors, dtype=complex))
		self.anchor = float(anchor)
		self.end = None if end is None else float(end)

		if self.rates.ndim != 1 or self.vectors.shape[0] != self.rates.shape[0]:
			raise ValidationError(f"Profile needs one vector per rate, got {self.rates.shape[0]} rate(s) and {self.vectors.shape[0]} vector(s).")
		if interval == 'left' and np.any(self.rates.real <= 0):
			raise IntegrabilityError(f"Left profiles need Re c > 0, got rates {self.rates}.")
		if interval == 'right' and np.any(self.rates.real >= 0):
			raise IntegrabilityError(f"Right profiles need Re c < 0, got rates {self.rates}.")
		if interval == 'middle' and (self.end is None or self.end <= self.anchor):
			raise ValidationError(f"Middle profiles need an end point after the anchor {self.anchor}, got {self.end}.")

	def __repr__(self):
		return f'''<TestFunction ({self.interval}, anchor={self.anchor}{f", end={self.end}" if self.end is not None else ""}, {len(self.rates)} term(s)): dim={self.dim}>'''

	@classmethod
	def zero(cls, interval:str, dim:int, anchor:float=0., end:Optional[float]=None):
		rate = {'left': 1., 'middle': 0., 'right': -1.}[interval]
		return cls(interval, [rate], np.zeros((1, dim)), anchor=anchor, end=end)

	@property
	def dim(self) -> int:
		return self.vectors.shape[1]

	@property
	def length(self) -> Optional[float]:
		return None if self.end is None else self.end - self.anchor

	@property
	def support(self) -> tuple:
		if self.interval == 'left':
			return -np.inf, self.anchor
		if self.interval == 'right':
			return self.anchor, np.inf
		return self.anchor, self.end

	def __call__(self, t:Union[float, np.ndarray]) -> np.ndarray:
		t = np.asarray(t, dtype=float)
		weights = np.exp(np.multiply.outer(t - self.anchor, self.rates))
		return weights @ self.vectors

	def boundary_value(self) -> np.ndarray:
		return self.vectors.sum(axis=0)

	def end_value(self) -> np.ndarray:
		if self.interval != 'middle':
			raise ValidationError(f"Only middle profiles have an end value, got a {self.interval} profile.")
		return np.exp(self.rates * self.length) @ self.vectors

	def derivative(self):
		return self.with_vectors(self.rates[:, None] * self.vectors)

	def apply(self, matrix):
		# pointwise action of a constant operator
		matrix = matrix.entries if hasattr(matrix, 'entries') else np.asarray(matrix)
		return self.with_vectors(self.vectors @ matrix.T)

	def scale(self, factor:complex):
		return self.with_vectors(complex(factor) * self.vectors)

	def with_vectors(self, vectors):
		return TestFunction(self.interval, self.rates, vectors, anchor=self.anchor, end=self.end)

	def serialize(self):
		return self.interval, self.anchor, self.end, self.rates.tolist(), self.vectors.tolist()


def l2_pairing(u:TestFunction, v:TestFunction) -> complex:
	"""Closed-form (u, v)_{L2}, linear in the first argument."""
	if (u.interval != v.interval) or (u.anchor != v.anchor) or (u.end != v.end):
		raise ValidationError(f"Cannot pair profiles on different intervals: {u} and {v}.")
	if u.dim != v.dim:
		raise ValidationError(f"Profile dimensions {u.dim} and {v.dim} do not match.")

	exponents = np.add.outer(u.rates, v.rates.conj())
	gram = u.vectors @ v.vectors.conj().T
	if u.interval == 'left':
		if np.any(exponents.real <= 0):
			raise IntegrabilityError(f"Pairing diverges on (-inf, {u.anchor}): exponent real parts {exponents.real.min():.3g} <= 0.")
		integrals = 1. / exponents
	elif u.interval == 'right':
		if np.any(exponents.real >= 0):
			raise IntegrabilityError(f"Pairing diverges on ({u.anchor}, inf): exponent real parts {exponents.real.max():.3g} >= 0.")
		integrals = -1. / exponents
	else:
		integrals = u.length * phi1(exponents * u.length)
	return complex(np.sum(gram * integrals))


def l2_norm_squared(u:TestFunction) -> float:
	return l2_pairing(u, u).real


class BoundaryPair:
	def __init__(self, gamma1, gamma2):
		self.gamma1 = np.asarray(gamma1, dtype=complex)
		self.gamma2 = np.asarray(gamma2, dtype=complex)
		if self.gamma1.shape != self.gamma2.shape:
			raise ValidationError(f"Boundary values have mismatching shapes {self.gamma1.shape} and {self.gamma2.shape}.")

	def __repr__(self):
		return f'''<BoundaryPair (dim={self.dim}): gamma1={np.array2string(self.gamma1, precision=4)}, gamma2={np.array2string(self.gamma2, precision=4)}>'''

	@property
	def dim(self) -> int:
		return self.gamma1.shape[0]

	def distance(self, gamma1, gamma2) -> float:
		return float(max(np.linalg.norm(self.gamma1 - gamma1), np.linalg.norm(self.gamma2 - gamma2)))

	def serialize(self):
		return self.gamma1.tolist(), self.gamma2.tolist()
