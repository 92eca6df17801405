"""Print optimum, min-max value and attained ratio on the tight instances for K = 2..N."""

import argparse
import time

from owabp.generators import gen_table1
from owabp.model import owa
from owabp.oracle import brute_force_owa
from owabp.solvers import solve_approx, solve_minmax


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=6)
    args = ap.parse_args()
    print(f"{'K':>3} {'opt':>5} {'minmax':>7} {'witness':>8} {'ratio':>6} {'certified':>9} {'secs':>7}")
    for K in range(2, args.max_k + 1):
        start = time.perf_counter()
        inst = gen_table1(K)
        fam, M, w = inst.family, inst.scenarios, inst.weight_vector()
        opt = brute_force_owa(fam, M, w).value
        mm = solve_minmax(fam, M).value
        witness = owa(range(K, 2 * K), M, w)
        cert = solve_approx(fam, M, w).certified_ratio
        secs = time.perf_counter() - start
        print(f"{K:>3} {str(opt):>5} {str(mm):>7} {str(witness):>8} {str(witness / opt):>6} {str(cert):>9} {secs:>7.3f}")


if __name__ == "__main__":
    main()
