"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--n 262144] [--repeat 5]

Prints best-of-``repeat`` wall time per call and throughput for each kernel.
"""
import argparse
import timeit

import numpy as np

from hexdep.hexgeom import Hexagon, Point, sample_uniform_array
from hexdep.kernels import available_backends

CASES = [  # (label, gamma, ap2)
    ("tier1 case2", 2.6, (3.0, 0.0)),
    ("tier2 case1", 3.9, (4.5, 1.5 * 3 ** 0.5)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1 << 18)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}; n = {args.n}")
    print(f"{'kernel':<16}{'case':<14}{'backend':<9}{'ms/call':>10}{'Mpts/s':>10}{'speedup':>9}")
    for label, gamma, (cx, cy) in CASES:
        a = sample_uniform_array(Hexagon(Point(0, 0), 1.0), args.n, rng)
        b = sample_uniform_array(Hexagon(Point(cx, cy), 1.0), args.n, rng)
        runs = {"quad_integrand": [], "classify": []}
        for bname in ("python", "cython"):
            if bname in backends:
                mod = backends[bname]
                runs["quad_integrand"].append((bname, mod.quad_integrand))
                runs["classify"].append((bname, mod.classify))
        if "cython" in backends:
            runs["quad_integrand"].append(("c-clip", backends["cython"].quad_integrand_clip))
        for kname, variants in runs.items():
            base = None
            for bname, fn in variants:
                if kname == "classify":
                    call = lambda: fn(a[:, 0], a[:, 1], b[:, 0], b[:, 1], gamma, cx, cy)
                else:
                    call = lambda: fn(a[:, 0], a[:, 1], gamma, cx, cy)
                best = min(timeit.repeat(call, number=1, repeat=args.repeat))
                base = base or best
                print(f"{kname:<16}{label:<14}{bname:<9}{best * 1e3:>10.2f}"
                      f"{args.n / best / 1e6:>10.2f}{base / best:>8.1f}x")

if __name__ == "__main__":
    main()
