import json

from importlib import resources


#
# numerical defaults
#

TOL_KERNEL = 1e-10  # |eigenvalue| <= TOL_KERNEL * max(1, ||A||) counts as kernel
TOL_HERMITIAN = 1e-12
TOL_UNITARY = 1e-12
TOL_BOUNDARY = 1e-9
TOL_CERTIFICATE = 1e-9
TOL_MERGE = 1e-10
TOL_MARGINAL = 1e-12
TOL_RESOLVENT = 1e-8
TOL_COMMUTING = 1e-12

EXP_OVERFLOW = 700.  # largest admissible real exponent
UNDERFLOW = 1e-300

MAX_FD_SIZE = 4096  # dim * m guard for the dense oracle
DEFAULT_BRANCHES = 10  # default window |Im lambda| <= DEFAULT_BRANCHES * 2pi / tau
GAUSS_POINTS = 32

SCHEMA_VERSION = 1


#
# packaged resources
#

def load_schema():
	with resources.files('mpnormal.config').joinpath('schema.json').open('r', encoding='utf8') as fp:
		return json.load(fp)


def list_presets():
	presets = resources.files('mpnormal.config').joinpath('presets')
	return sorted(
		entry.name[:-len('.json')]
		for entry in presets.iterdir()
		if entry.name.endswith('.json')
	)


def read_preset(name:str) -> str:
	preset = resources.files('mpnormal.config').joinpath('presets').joinpath(f'{name}.json')
	if not preset.is_file():
		raise FileNotFoundError(f"[Error] Unknown preset '{name}'. Available presets: {', '.join(list_presets())}.")
	return preset.read_text(encoding='utf8')
