import logging

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from jsonschema import Draft202012Validator
from jsonschema.exceptions import ValidationError as SchemaViolation

from mpnormal.config import SCHEMA_VERSION, load_schema, read_preset
from mpnormal.errors import ConfigError, MPNormalError
from mpnormal.extensions import MultipointProblem, ExtensionParams
from mpnormal.formats.parser import FormatParser, PositionedJSON
from mpnormal.operators import HermitianOperator, UnitaryOperator
from mpnormal.oracle import EXAMPLE_ENDPOINTS, build_example35
from mpnormal.spectrum import BranchWindow


logger = logging.getLogger(__name__)

MATRICES = ('A1', 'A2', 'A3', 'W1', 'W2')


@dataclass
class ProblemConfig:
	name: str
	problem: MultipointProblem
	params: ExtensionParams
	options: dict = field(default_factory=dict)
	description: Optional[str] = None

	def __repr__(self):
		return f'''<ProblemConfig '{self.name}': {self.problem}>'''

	def window(self) -> BranchWindow:
		if self.options.get('n_window') is not None:
			return BranchWindow.symmetric(self.options['n_window'])
		if self.options.get('im_bound') is not None:
			return BranchWindow(im_bound=self.options['im_bound'])
		return BranchWindow.default(self.problem.tau)


class ConfigParser(FormatParser):
	def __init__(self, source:str='<config>', overrides:Optional[dict]=None):
		super().__init__(source=source)
		self.schema = load_schema()['config']
		self.validator = Draft202012Validator(self.schema)
		self.overrides = {key: value for key, value in (overrides or {}).items() if value is not None}

	def parse(self, text:str) -> ProblemConfig:
		document = PositionedJSON(text)
		data = document.data
		if isinstance(data, dict) and isinstance(data.get('options', {}), dict):
			data = dict(data, options=self._merge_overrides(data.get('options', {})))
		self._validate(document, data)

		options = {
			key: data.get('options', {}).get(key, rule.get('default'))
			for key, rule in self.schema['properties']['options']['properties'].items()
		}
		endpoints = tuple(float(data['endpoints'][key]) for key in ('a1', 'a2', 'b2', 'a3'))
		if not (endpoints[0] < endpoints[1] < endpoints[2] < endpoints[3]):
			raise document.error(f"Endpoints must satisfy a1 < a2 < b2 < a3, got {endpoints}", ('endpoints',))

		if 'galerkin' in data:
			problem, params = self._parse_galerkin(document, data['galerkin'], endpoints)
		else:
			operators = {}
			for name, constraint in (('A1', 'nonpositive'), ('A2', 'nonnegative'), ('A3', 'nonnegative')):
				with self._located(document, (name,)):
					operators[name] = HermitianOperator(self._parse_matrix(document, data, name), sign_constraint=constraint, tol_kernel=options['tol_kernel'], name=name)
			unitaries = {}
			for name in ('W1', 'W2'):
				with self._located(document, (name,)):
					unitaries[name] = UnitaryOperator(self._parse_matrix(document, data, name), name=name)
			with self._located(document, ()):
				problem = MultipointProblem(*endpoints, strict=False, **operators)
				params = ExtensionParams(**unitaries)

		name = data.get('name', self.source)
		logger.debug("Parsed config '%s' with options %s.", name, options)
		return ProblemConfig(name=name, problem=problem, params=params, options=options, description=data.get('description'))

	def _merge_overrides(self, options:dict) -> dict:
		# a window given as an override replaces the one in the document
		if 'n_window' in self.overrides or 'im_bound' in self.overrides:
			options = {key: value for key, value in options.items() if key not in ('n_window', 'im_bound')}
		return {**options, **self.overrides}

	def _validate(self, document:PositionedJSON, data):
		errors = list(self.validator.iter_errors(data))
		if not errors:
			return
		for error in errors:
			logger.debug("Schema violation at %s: %s", list(error.absolute_path), error.message)
		# report the violation that comes first in the document
		error = min(errors, key=lambda error: (document.locate(error.absolute_path), -len(error.absolute_path)))
		message, path = self._describe(error)
		if len(errors) > 1:
			message = f"{message} ({len(errors) - 1} more violation(s))"
		raise document.error(message, path)

	def _describe(self, error:SchemaViolation) -> tuple:
		path = tuple(error.absolute_path)
		label = _label(path)
		if error.validator == 'required':
			missing = [key for key in error.validator_value if key not in error.instance]
			return f"Missing required field '{missing[0]}'", path
		if error.validator == 'additionalProperties':
			known = error.schema.get('properties', {})
			unknown = [key for key in error.instance if key not in known]
			kind = 'option' if path == ('options',) else 'field'
			return f"Unknown {kind} '{unknown[0]}'", path + (unknown[0],)
		if error.validator == 'const' and path == ('version',):
			return f"Unsupported config version {error.instance} (expected {SCHEMA_VERSION})", path
		if error.validator == 'type':
			expected = error.validator_value if isinstance(error.validator_value, str) else ' or '.join(error.validator_value)
			return f"{label} must be of type {expected}, got {error.instance!r}", path
		if error.validator == 'enum':
			return f"{label} must be one of {error.validator_value}, got {error.instance!r}", path
		if error.validator == 'oneOf' and path == ('options',):
			return "Options 'n_window' and 'im_bound' are mutually exclusive", path
		return f"{label}: {error.message}", path

	@contextmanager
	def _located(self, document:PositionedJSON, path:tuple):
		# semantic failures are reported against the matrix (or section) that caused them
		try:
			yield
		except ConfigError:
			raise
		except MPNormalError as error:
			raise document.error(str(error).replace('[Error] ', '').rstrip('.'), path)

	def _parse_matrix(self, document:PositionedJSON, data:dict, name:str) -> np.ndarray:
		# entries are [re, im] pairs by the schema; squareness is checked here
		rows = data[name]
		size = len(rows)
		for row_index, row in enumerate(rows):
			if len(row) != size:
				raise document.error(f"Row {row_index} of '{name}' must hold {size} [re, im] entries", (name, row_index))
		return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)

	def _parse_galerkin(self, document:PositionedJSON, generator:dict, endpoints:tuple) -> tuple:
		if tuple(endpoints) != EXAMPLE_ENDPOINTS:
			raise document.error(f"Generator 'galerkin' fixes the endpoints to {EXAMPLE_ENDPOINTS}, got {tuple(endpoints)}", ('endpoints',))
		with self._located(document, ('galerkin',)):
			return build_example35(generator['N'], phi=float(generator.get('phi', 0.)), psi=float(generator.get('psi', 0.)))


def _label(path:tuple) -> str:
	if not path:
		return 'Config'
	head = path[0]
	if head == 'options' and len(path) > 1:
		return f"Option '{path[1]}'"
	if head == 'endpoints' and len(path) > 1:
		return f"Endpoint '{path[1]}'"
	if head in MATRICES:
		if len(path) >= 3:
			return f"Entry ({path[1]}, {path[2]}) of '{head}'"
		if len(path) == 2:
			return f"Row {path[1]} of '{head}'"
		return f"Matrix '{head}'"
	return f"Field '{'/'.join(str(part) for part in path)}'"


def load_config(path:Optional[str]=None, preset:Optional[str]=None, overrides:Optional[dict]=None) -> ProblemConfig:
	if (path is None) == (preset is None):
		raise ConfigError("Provide exactly one of a config file or a preset name.")
	if preset is not None:
		try:
			text = read_preset(preset)
		except FileNotFoundError as error:
			raise ConfigError(str(error))
		return ConfigParser(source=f'preset:{preset}', overrides=overrides).parse(text)
	try:
		with open(path, 'r', encoding='utf8') as fp:
			text = fp.read()
	except OSError as error:
		raise ConfigError(f"Cannot read config '{path}': {error.strerror}.")
	return ConfigParser(source=path, overrides=overrides).parse(text)
