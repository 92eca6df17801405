"""Write a seeded random corpus (plus the tight instances) as instance files for ``owabp bench``."""

import argparse
from pathlib import Path

from owabp.fileformat import write_instance
from owabp.generators import RANDOM_KINDS, gen_table1, random_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--per-family", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-elements", type=int, default=10)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--no-table1", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    count = 0
    for f, kind in enumerate(RANDOM_KINDS):
        corpus = random_corpus(kind, args.per_family, args.seed + 100_000 * f, args.max_elements, args.max_k)
        for inst in corpus:
            write_instance(inst, args.out / f"{inst.name}.json")
            count += 1
    if not args.no_table1:
        for K in range(2, 7):
            inst = gen_table1(K)
            write_instance(inst, args.out / f"{inst.name}.json")
            count += 1
    print(f"wrote {count} instances to {args.out}")


if __name__ == "__main__":
    main()
