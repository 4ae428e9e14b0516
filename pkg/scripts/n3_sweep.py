"""Three-component uniqueness / completeness sweep.

Sampled by default; ``--full`` walks all 2^24 networks (hours of CPU,
split over BNISO_THREADS processes).
"""

import argparse
import json
import sys
import time

from bniso.enumeration import uniqueness_check
from bniso.rng import worker_count


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--full", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    if args.full:
        def progress(i):
            print(f"{i:>9} / {1 << 24}  {time.perf_counter() - t0:8.1f}s", file=sys.stderr, flush=True)
        rep = uniqueness_check(3, "exhaustive", progress=progress, workers=worker_count())
    else:
        rep = uniqueness_check(3, ("sample", args.samples, args.seed))
    out = rep.to_dict()
    out["seconds"] = round(time.perf_counter() - t0, 2)
    print(json.dumps(out))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
