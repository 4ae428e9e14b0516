"""How many distinct interaction graphs sampled conjugates reach, by n.

Prints one row per (n, trials): the lower bound on |G(f)| and that bound
as a fraction of 2^(n^2). Exploratory only.
"""

import argparse

from bniso import Network
from bniso.enumeration import gsize_estimate
from bniso.rng import random_network_table, substream


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--trials", type=int, nargs="+", default=[100, 1000, 10_000])
    ap.add_argument("--networks", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'n':>3} {'net':>4} {'trials':>7} {'graphs':>7} {'fraction':>10}")
    for n in args.ns:
        for k in range(args.networks):
            f = Network(n, random_network_table(n, substream(args.seed, "gsize-growth", n, k)))
            for t in args.trials:
                g, _ = gsize_estimate(f, t, args.seed)
                print(f"{n:>3} {k:>4} {t:>7} {g:>7} {g / 2 ** (n * n):>10.3e}")


if __name__ == "__main__":
    main()
