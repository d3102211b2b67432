"""Compare the compiled mod-p kernel with the pure-Python fallback.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py [--repeat 5] [--degrees 16,64,256]

Both backends get identical random inputs; results are checked for equality
before timing.
"""

import argparse
import random
import sys
import timeit

from isoclass.arith import _modp_py

try:
    from isoclass.arith import _modp
except ImportError:
    _modp = None

P = 1000003


def random_poly(rng, n):
    return [rng.randrange(P) for _ in range(n)] + [1 + rng.randrange(P - 1)]


def cases(rng, n):
    a, b, m = random_poly(rng, n), random_poly(rng, n), random_poly(rng, n)
    e = P  # Frobenius power, the hot call in distinct-degree factorization
    return {
        "pmul": lambda k: k.pmul(a, b, P),
        "pdivmod": lambda k: k.pdivmod(k.pmul(a, b, P), m, P),
        "pgcd": lambda k: k.pgcd(a, b, P),
        "ppowmod": lambda k: k.ppowmod([0, 1], e, m, P),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--degrees", default="16,64,256")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _modp is None:
        print("compiled kernel not built; only the fallback is available", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    print(f"{'op':8s} {'deg':>5s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for n in (int(d) for d in args.degrees.split(",")):
        for name, call in cases(rng, n).items():
            assert call(_modp) == call(_modp_py), name
            number = max(1, 2000 // n)
            t_py = min(timeit.repeat(lambda: call(_modp_py), number=number, repeat=args.repeat)) / number
            t_cy = min(timeit.repeat(lambda: call(_modp), number=number, repeat=args.repeat)) / number
            print(f"{name:8s} {n:5d} {t_py * 1e3:10.3f} {t_cy * 1e3:10.3f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
