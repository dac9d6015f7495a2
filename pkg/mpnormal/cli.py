import argparse
import logging
import sys
import time

from mpnormal.config import list_presets
from mpnormal.errors import ConfigError, MPNormalError, NumericalError
from mpnormal.extensions import validate_extension
from mpnormal.formats import load_config, to_json, spectrum_to_json, spectrum_to_csv, write_plot_data
from mpnormal.oracle import SCHEMES
from mpnormal.spectrum import full_spectrum
from mpnormal.verify import SUITES, run_suites


logger = logging.getLogger('mpnormal')

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def parse_arguments(argv=None):
	parser = argparse.ArgumentParser(prog='mpnormal', description="Normal Extensions of Multipoint Differential Operators")
	subparsers = parser.add_subparsers(dest='command', required=True)

	common = argparse.ArgumentParser(add_help=False)
	source = common.add_mutually_exclusive_group(required=True)
	source.add_argument('--config', help='path to JSON problem config')
	source.add_argument('--preset', help='name of a bundled preset (see `mpnormal presets`)')
	common.add_argument('--tol', type=float, help='kernel tolerance (default: 1e-10)')
	window = common.add_mutually_exclusive_group()
	window.add_argument('--n-window', type=int, help='enumerate branches n in [-N, N]')
	window.add_argument('--im-bound', type=float, help='enumerate eigenvalues with |Im lambda| <= X')
	common.add_argument('--grid', type=int, help='finite-difference grid size m')
	common.add_argument('--scheme', choices=SCHEMES, help='finite-difference scheme (default: box)')
	common.add_argument('--witness-sign', choices=['printed', 'decaying'], help='exponent sign of the non-surjectivity witness')
	common.add_argument('--output', help='path to output file (default: stdout)')
	common.add_argument('-v', '--verbose', action='store_true', help='log progress to stderr')

	validate = subparsers.add_parser('validate', parents=[common], help='check that a normal extension exists')
	validate.add_argument('--format', choices=['text', 'json'], default='text', help='report format')

	spectrum = subparsers.add_parser('spectrum', parents=[common], help='compute the spectrum of the extension')
	spectrum.add_argument('--format', choices=['json', 'csv'], default='json', help='report format')
	spectrum.add_argument('--plot-data', help='path to (re, im) scatter data')

	verify = subparsers.add_parser('verify', parents=[common], help='cross-check the closed forms against independent oracles')
	verify.add_argument('--suite', choices=list(SUITES) + ['all'], default='all', help='verification suite')
	verify.add_argument('--samples', type=int, help='random samples per check')
	verify.add_argument('--seed', type=int, default=0, help='random seed')
	verify.add_argument('--format', choices=['text', 'json'], default='text', help='report format')

	subparsers.add_parser('presets', help='list the bundled presets')
	return parser.parse_args(argv)


def setup_logging(verbose:bool=False):
	# stderr carries diagnostics only
	handler = logging.StreamHandler(sys.stderr)
	handler.setFormatter(logging.Formatter('%(message)s'))
	for name in ('mpnormal', 'py.warnings'):
		named = logging.getLogger(name)
		named.handlers = [handler]
		named.setLevel(logging.INFO if verbose else logging.WARNING)
		named.propagate = False
	logging.captureWarnings(True)


def banner(title:str):
	print("=" * (len(title) + 4), file=sys.stderr)
	print(f"🧮️ {title}", file=sys.stderr)
	print("=" * (len(title) + 4), file=sys.stderr)


def emit(text:str, output=None):
	if output is None:
		sys.stdout.write(text if text.endswith('\n') else text + '\n')
		return
	with open(output, 'w', encoding='utf8', newline='') as fp:
		fp.write(text)
	logger.info("Saved report to '%s'.", output)


def error_record(error:Exception) -> str:
	record = {'error': {'type': type(error).__name__, 'message': str(error)}}
	for attribute in ('mu', 'branch', 'line', 'column'):
		if getattr(error, attribute, None) is not None:
			record['error'][attribute] = getattr(error, attribute)
	return to_json(record)


#
# commands
#

def cmd_validate(config, args) -> int:
	report = validate_extension(config.problem, config.params)
	emit(to_json(report.to_dict()) if args.format == 'json' else str(report), args.output)
	return EXIT_OK if report.extension_exists else EXIT_FAILED


def cmd_spectrum(config, args) -> int:
	report = validate_extension(config.problem, config.params)
	if not report.extension_exists:
		print(f"[Error] No normal extension exists: {report.maximality_note or 'validation failed'}", file=sys.stderr)
		emit(to_json({'error': {'type': 'ValidationError', 'message': report.maximality_note or 'validation failed'}}), args.output)
		return EXIT_FAILED

	start_time = time.time()
	result = full_spectrum(config.problem, config.params, window=config.window())
	logger.info("Computed %d eigenvalue(s) in %.2fs.", len(result.eigenvalues), time.time() - start_time)
	emit(spectrum_to_csv(result) if args.format == 'csv' else spectrum_to_json(result), args.output)
	if args.plot_data:
		write_plot_data(result, args.plot_data, im_bound=config.options.get('im_bound'))
		logger.info("Saved plot data to '%s'.", args.plot_data)
	return EXIT_OK


def cmd_verify(config, args) -> int:
	checks = run_suites(config, suite=args.suite, samples=args.samples, seed=args.seed)
	if args.format == 'json':
		emit(to_json({'config': config.name, 'checks': [check.to_dict() for check in checks]}), args.output)
	else:
		emit('\n'.join(str(check) for check in checks), args.output)
	failed = [check for check in checks if not check.passed]
	print(f"{len(checks) - len(failed)}/{len(checks)} check(s) passed.", file=sys.stderr)
	return EXIT_OK if not failed else EXIT_FAILED


COMMANDS = {'validate': cmd_validate, 'spectrum': cmd_spectrum, 'verify': cmd_verify}


def main(argv=None) -> int:
	args = parse_arguments(argv)
	if args.command == 'presets':
		print('\n'.join(list_presets()))
		return EXIT_OK

	setup_logging(verbose=args.verbose)
	banner(f"mpnormal {args.command}")

	overrides = {
		'tol_kernel': args.tol, 'n_window': args.n_window, 'im_bound': args.im_bound,
		'grid': args.grid, 'scheme': args.scheme, 'witness_sign': args.witness_sign
	}
	try:
		config = load_config(path=args.config, preset=args.preset, overrides=overrides)
		return COMMANDS[args.command](config, args)
	except ConfigError as error:
		print(error, file=sys.stderr)
		return EXIT_CONFIG
	except (MPNormalError, NumericalError) as error:
		print(error, file=sys.stderr)
		emit(error_record(error), args.output)
		return EXIT_FAILED


if __name__ == '__main__':
	sys.exit(main())
