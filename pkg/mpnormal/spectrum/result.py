from typing import Optional

from mpnormal.config import SCHEMA_VERSION, TOL_MERGE
from mpnormal.spectrum.sets import SpectralSet, EmptySet, set_from_dict


class SpectrumResult:
	"""Point, continuous and residual spectrum of one extension, with provenance per part.

	`eigenvalues` holds the enumerated point spectrum inside the branch window (empty for the
	half-line component), `point` the exact descriptor used for membership queries.
	"""
	def __init__(self, eigenvalues:list, point:SpectralSet, continuous:SpectralSet, residual:Optional[SpectralSet]=None, provenance:Optional[dict]=None, notes:Optional[list]=None, certificates:Optional[list]=None):
		self.eigenvalues = list(eigenvalues)
		self.point = point
		self.continuous = continuous
		self.residual = EmptySet() if residual is None else residual
		self.provenance = {} if provenance is None else dict(provenance)
		self.notes = [] if notes is None else list(notes)
		self.certificates = [] if certificates is None else list(certificates)

	def __repr__(self):
		return f'''<SpectrumResult: {len(self.eigenvalues)} enumerated eigenvalue(s), continuous '{self.continuous.describe()}', residual '{self.residual.describe()}'>'''

	def points(self) -> list:
		return [eigenvalue.lam if hasattr(eigenvalue, 'lam') else complex(eigenvalue) for eigenvalue in self.eigenvalues]

	def disjointness_violations(self, tol:float=TOL_MERGE) -> list:
		# enumerated eigenvalues that the continuous descriptor also claims
		return [point for point in self.points() if self.continuous.contains(point, tol=tol)]

	def to_dict(self) -> dict:
		rows = []
		for eigenvalue in self.eigenvalues:
			if hasattr(eigenvalue, 'serialize'):
				rows.append(eigenvalue.serialize())
			else:
				point = complex(eigenvalue)
				rows.append({'re': point.real, 'im': point.imag})
		return {
			'version': SCHEMA_VERSION,
			'point': rows,
			'point_set': self.point.serialize(),
			'continuous': self.continuous.describe(),
			'continuous_set': self.continuous.serialize(),
			'residual': self.residual.describe(),
			'residual_set': self.residual.serialize(),
			'provenance': self.provenance,
			'notes': self.notes
		}

	@classmethod
	def from_dict(cls, report:dict):
		version = report.get('version')
		if version != SCHEMA_VERSION:
			raise ValueError(f"[Error] Unsupported report version {version} (expected {SCHEMA_VERSION}).")
		return cls(
			eigenvalues=[complex(row['re'], row['im']) for row in report['point']],
			point=set_from_dict(report['point_set']),
			continuous=set_from_dict(report['continuous_set']),
			residual=set_from_dict(report['residual_set']),
			provenance=report.get('provenance', {}),
			notes=report.get('notes', [])
		)
