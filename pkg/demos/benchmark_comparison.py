"""Compare the plain swarm and the two-group variant on benchmark functions.

Runs a small paired experiment on a few registry functions and prints the
five-number summary per algorithm. Each run pair shares a seed, so both
algorithms start from the same initial population.

Usage: python3 demos/benchmark_comparison.py
"""

import numpy as np

from epso import EpsoConfig, optimize, registry, summarize

FUNCTIONS = ["rastrigin_shifted_rotated", "ackley_shifted_rotated", "hybrid_1"]
DIMENSION = 10
RUNS = 10


def main():
    for name in FUNCTIONS:
        spec, objective = registry(name, DIMENSION, seed=1)
        print(f"\n{name} (D={DIMENSION}, bias={spec.bias:g}, {RUNS} paired runs)")
        for mode in ("pso", "epso"):
            finals = []
            for run in range(RUNS):
                cfg = EpsoConfig(
                    dimension=DIMENSION,
                    bounds=spec.bounds,
                    population_size=30,
                    max_iterations=200,
                    seed=1 + run,
                )
                finals.append(optimize(cfg, objective, mode=mode).best_fitness)
            s = summarize(finals)
            print(
                f"  {mode:>4}: mean={s.mean:10.4f}  median={s.median:10.4f}  "
                f"std={s.std:8.4f}  best={s.best:10.4f}  worst={s.worst:10.4f}"
            )
        # the registry optimum evaluates to the bias, a useful reference line
        print(f"  target (value at the optimum): {objective(spec.optimum):.4f}")


if __name__ == "__main__":
    main()
