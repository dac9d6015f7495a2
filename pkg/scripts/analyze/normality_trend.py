import argparse
import time

import pandas as pd

from mpnormal.formats import load_config
from mpnormal.oracle import SCHEMES, grid_sweep, normality_trend, match_eigenvalues
from mpnormal.spectrum import BranchWindow, interval_eigenvalues


def parse_arguments():
	parser = argparse.ArgumentParser(description="Normality Trend of the Discretized Interval Operator")
	source = parser.add_mutually_exclusive_group(required=True)
	source.add_argument('--config', help='path to JSON problem config')
	source.add_argument('--preset', help='name of a bundled preset')
	parser.add_argument('--grids', type=int, nargs='+', default=[32, 64, 128, 256], help='grid sizes m to sweep')
	parser.add_argument('--scheme', choices=SCHEMES, default='box', help='finite-difference scheme for the eigenvalue sweep')
	parser.add_argument('--processes', type=int, help='number of worker processes (default: half of all cores)')
	parser.add_argument('--output', help='path to output CSV (default: print table)')
	return parser.parse_args()


def main():
	args = parse_arguments()
	print("="*49)
	print("🧮️ Normality Trend of the Discretized Interval Operator")
	print("="*49)

	config = load_config(path=args.config, preset=args.preset)
	problem, W2 = config.problem, config.params.W2
	print(f"Loaded '{config.name}' (dimension {problem.dim}, tau={problem.tau:.3f}).")

	sweep_start_time = time.time()
	trend = pd.DataFrame(normality_trend(problem, W2, args.grids))

	# eigenvalue error inside the resolved part of each grid
	errors = []
	for result in grid_sweep(problem, W2, args.grids, scheme=args.scheme, processes=args.processes):
		analytic = interval_eigenvalues(problem, W2, BranchWindow(im_bound=result.reliable_bound))
		matches = match_eigenvalues(analytic, result.eigenvalues) if result.eigenvalues.size > 0 else []
		errors.append({
			'm': result.grid_size,
			'eigenvalues': len(analytic),
			'max_relative_error': max((match.relative_error for match in matches), default=float('nan'))
		})
	trend = trend.merge(pd.DataFrame(errors), on='m')

	if args.output:
		trend.to_csv(args.output, index=False)
		print(f"Saved trend to '{args.output}'.")
	else:
		print(trend.to_string(index=False))

	print(f"\nSwept {len(args.grids)} grid(s) in {time.time() - sweep_start_time:.2f}s.")


if __name__ == '__main__':
	main()
