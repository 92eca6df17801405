"""Exact-solver cost as K grows: threshold vectors visited, oracle calls and wall time."""

import argparse
import statistics
import time

from owabp.generators import gen_random
from owabp.solvers import count_threshold_vectors, solve_exact


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="spanning_tree")
    ap.add_argument("--elements", type=int, default=10)
    ap.add_argument("--nodes", type=int, default=5)
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--cost-max", type=int, default=9)
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()
    print(f"{'K':>3} {'vectors':>10} {'oracle calls':>13} {'median secs':>12}")
    for K in range(1, args.max_k + 1):
        vectors, calls, secs = [], [], []
        for seed in range(args.reps):
            inst = gen_random(args.family, args.elements, K, args.cost_max, seed, n_nodes=args.nodes)
            start = time.perf_counter()
            rep = solve_exact(inst.family, inst.scenarios, inst.weight_vector())
            secs.append(time.perf_counter() - start)
            vectors.append(count_threshold_vectors(inst.scenarios))
            calls.append(rep.oracle_calls)
        print(f"{K:>3} {max(vectors):>10} {max(calls):>13} {statistics.median(secs):>12.4f}")


if __name__ == "__main__":
    main()
