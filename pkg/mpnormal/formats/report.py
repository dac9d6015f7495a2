import json

from typing import Optional

import numpy as np

from mpnormal.config import load_schema
from mpnormal.spectrum import SpectrumResult


def _import_pandas():
	try:
		import pandas as pd
	except ImportError as error:
		print("[Error] Tabular reports require pandas:\n> pip install mpnormal")
		raise error
	return pd


def _json_default(value):
	if isinstance(value, (np.floating, np.integer)):
		return value.item()
	if isinstance(value, np.bool_):
		return bool(value)
	if isinstance(value, np.ndarray):
		return value.tolist()
	if isinstance(value, complex):
		return [value.real, value.imag]
	raise TypeError(f"[Error] Cannot serialize {type(value).__name__} to JSON.")


def to_json(payload:dict) -> str:
	# non-finite floats become strings, keeping the document strict JSON
	def sanitize(value):
		if isinstance(value, dict):
			return {key: sanitize(item) for key, item in value.items()}
		if isinstance(value, (list, tuple)):
			return [sanitize(item) for item in value]
		if isinstance(value, float) and not np.isfinite(value):
			return str(value)
		return value
	return json.dumps(sanitize(json.loads(json.dumps(payload, default=_json_default))), indent=2)


def spectrum_frame(result:SpectrumResult):
	pd = _import_pandas()
	columns = load_schema()['report']['point_columns']
	rows = [{column: row.get(column) for column in columns} for row in result.to_dict()['point']]
	return pd.DataFrame(rows, columns=columns)


def spectrum_to_json(result:SpectrumResult) -> str:
	return to_json(result.to_dict())


def spectrum_to_csv(result:SpectrumResult) -> str:
	return spectrum_frame(result).to_csv(index=False, lineterminator='\r\n')


def spectrum_from_json(text:str) -> SpectrumResult:
	return SpectrumResult.from_dict(json.loads(text))


def write_plot_data(result:SpectrumResult, path:str, im_bound:Optional[float]=None):
	"""Writes the (re, im) scatter of the point spectrum plus one marker row for the iR continuum."""
	pd = _import_pandas()
	columns = load_schema()['report']['plot_columns']
	points = result.points()
	frame = pd.DataFrame(
		[{'re': point.real, 'im': point.imag, 'kind': 'point'} for point in points],
		columns=columns
	)
	if not result.continuous.is_empty():
		if im_bound is None:
			im_bound = max([abs(point.imag) for point in points], default=1.)
		marker = pd.DataFrame([{'re': 0., 'im': float(im_bound), 'kind': result.continuous.describe()}], columns=columns)
		frame = pd.concat([frame, marker], ignore_index=True)
	frame.to_csv(path, index=False)
