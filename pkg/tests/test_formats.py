import json

import numpy as np
import pandas as pd
import pytest

from mpnormal.config import list_presets, read_preset, load_schema
from mpnormal.errors import ConfigError
from mpnormal.formats import (
	PositionedJSON, ConfigParser, load_config, to_json, spectrum_frame, spectrum_to_csv, spectrum_to_json,
	spectrum_from_json, write_plot_data
)
from mpnormal.spectrum import BranchWindow, full_spectrum


def preset_data(name):
	return json.loads(read_preset(name))


#
# positioned JSON
#

def test_positions():
	document = PositionedJSON('{\n  "a": [1, {"b": 2}],\n  "c": "x"\n}')
	assert document.locate(('a',)) == (2, 8)
	assert document.locate(('a', 1, 'b')) == (2, 18)
	assert document.locate(('c',)) == (3, 8)
	# unknown paths fall back to their longest known prefix
	assert document.locate(('a', 7)) == (2, 8)


def test_malformed_position():
	with pytest.raises(ConfigError) as error:
		PositionedJSON('{"a": 1,\n "b": }')
	assert error.value.line == 2


#
# config parsing
#

@pytest.mark.parametrize('name', list_presets())
def test_presets_parse(name):
	config = load_config(preset=name)
	assert config.name == name
	assert config.problem.dim == config.params.dim


def test_diag_preset():
	config = load_config(preset='diag-2x2')
	np.testing.assert_allclose(config.params.W1.entries, [[0., 1.], [1., 0.]])
	assert config.options['im_bound'] == 40
	assert config.window().im_bound == 40.


def test_option_defaults():
	config = load_config(preset='scalar-phase')
	defaults = load_schema()['config']['properties']['options']['properties']
	assert config.options['scheme'] == defaults['scheme']['default'] == 'box'
	assert config.options['tol_kernel'] == 1e-10
	assert config.options['witness_sign'] == 'printed'


def test_window_override():
	config = load_config(preset='diag-2x2', overrides={'n_window': 2, 'grid': None})
	assert config.options['im_bound'] is None
	assert config.window().serialize() == {'n_min': -2, 'n_max': 2}
	assert config.options['grid'] == 1024


def test_default_window():
	data = preset_data('scalar-phase')
	data['options'] = {}
	config = ConfigParser().parse(json.dumps(data))
	assert config.window().im_bound == pytest.approx(20 * np.pi)


def test_galerkin_preset():
	config = load_config(preset='example35-N4')
	assert config.problem.dim == 4
	np.testing.assert_allclose(config.params.W2.entries, 1j * np.eye(4), atol=1e-15)


def test_source_required():
	with pytest.raises(ConfigError):
		load_config()
	with pytest.raises(ConfigError):
		load_config(path='x.json', preset='scalar-phase')
	with pytest.raises(ConfigError):
		load_config(path='/nonexistent/problem.json')


@pytest.mark.parametrize('mutate, message', [
	(lambda data: data.pop('endpoints'), "Missing required field 'endpoints'"),
	(lambda data: data.update(version=2), 'Unsupported config version'),
	(lambda data: data['endpoints'].update(b2=-3.), 'a1 < a2 < b2 < a3'),
	(lambda data: data['endpoints'].update(a1=True), "Endpoint 'a1' must be of type number"),
	(lambda data: data.pop('W2'), "Missing required field 'W2'"),
	(lambda data: data.update(A2=[[[0., 0.], [1., 0.]]]), "Row 0 of 'A2'"),
	(lambda data: data.update(options={'colour': 1}), "Unknown option 'colour'"),
	(lambda data: data.update(options={'scheme': 'spectral'}), "Option 'scheme' must be one of"),
	(lambda data: data.update(options={'grid': 1.5}), "Option 'grid' must be of type integer"),
	(lambda data: data.update(options={'n_window': 2, 'im_bound': 3.}), 'mutually exclusive'),
])
def test_config_errors(mutate, message):
	data = preset_data('scalar-phase')
	mutate(data)
	with pytest.raises(ConfigError, match=message.replace('(', r'\(').replace(')', r'\)')) as error:
		ConfigParser(source='test.json').parse(json.dumps(data, indent=1))
	assert error.value.line is not None


def test_galerkin_endpoints():
	data = preset_data('example35-N4')
	data['endpoints']['a3'] = 2.
	with pytest.raises(ConfigError, match="fixes the endpoints"):
		ConfigParser().parse(json.dumps(data))


def test_error_points_at_entry():
	data = preset_data('scalar-phase')
	data['W2'] = [[[1.0, 'i']]]
	text = json.dumps(data, indent=1)
	with pytest.raises(ConfigError) as error:
		ConfigParser().parse(text)
	line = text.splitlines()[error.value.line - 1]
	assert line[error.value.column - 1:].startswith('"i"')
	assert "Entry (0, 0) of 'W2'" in str(error.value)


def test_semantic_error_points_at_matrix():
	data = preset_data('scalar-phase')
	data['A2'] = [[[2.0, 1.0]]]
	text = json.dumps(data, indent=1)
	with pytest.raises(ConfigError, match='not Hermitian') as error:
		ConfigParser().parse(text)
	assert error.value.line > 1
	assert text.splitlines()[error.value.line - 1].lstrip().startswith('"A2"')


#
# reports
#

def test_to_json_non_finite():
	payload = json.loads(to_json({'value': float('inf'), 'z': 1 + 2j, 'array': np.arange(3), 'flag': np.bool_(True)}))
	assert payload == {'value': 'inf', 'z': [1., 2.], 'array': [0, 1, 2], 'flag': True}
	with pytest.raises(TypeError):
		to_json({'value': object()})


def test_spectrum_frame(diag_2x2):
	result = full_spectrum(*diag_2x2, window=BranchWindow.symmetric(1))
	frame = spectrum_frame(result)
	assert isinstance(frame, pd.DataFrame)
	assert list(frame.columns) == load_schema()['report']['point_columns']
	assert sorted(frame['re'].round(9).unique()) == [1., 3.]
	assert spectrum_to_csv(result).split('\r\n')[0] == ','.join(frame.columns)


def test_spectrum_json_fields(scalar_periodic):
	result = full_spectrum(*scalar_periodic, window=BranchWindow.symmetric(1))
	report = json.loads(spectrum_to_json(result))
	assert list(report) == load_schema()['report']['fields']
	assert spectrum_from_json(spectrum_to_json(result)).continuous.describe() == 'iR \\ points'


def test_plot_data(tmp_path, scalar_periodic):
	result = full_spectrum(*scalar_periodic, window=BranchWindow.symmetric(1))
	path = tmp_path / 'plot.csv'
	write_plot_data(result, str(path), im_bound=12.)
	frame = pd.read_csv(path)
	assert list(frame.columns) == ['re', 'im', 'kind']
	assert list(frame['kind']) == ['point'] * 3 + ['iR \\ points']
	assert frame['im'].iloc[-1] == 12.
