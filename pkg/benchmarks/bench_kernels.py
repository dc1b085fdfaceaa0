"""Compare the compiled and numpy kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--n 1000000] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from constnormal import csets, kernels
from constnormal.density import sample_block


def cases():
    e = csets.pathological_E(csets.CantorSpec(depth=12))
    out = []
    for o in (csets.halfspace(), csets.quadrant(), csets.cone_c01(), e, csets.s_interior(), csets.cone_ab(1, 1)):
        k = o.kernel
        lo = np.array([float(a) for a, _ in k.intervals])
        hi = np.array([float(b) for _, b in k.intervals])
        out.append((o.name, k, lo, hi))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    h = np.concatenate([sample_block(0, 0, b, min(65536, args.n - b * 65536)) for b in range(-(-args.n // 65536))])
    center = (0.0, 0.0, 0.0, 0.0, 0.0)
    names = sorted(kernels.BACKENDS)
    print(f"n = {args.n}, backends: {', '.join(names)}")
    print(f"{'set':<16}" + "".join(f"{b + ' [s]':>16}" for b in names) + f"{'speedup':>10}  agree")
    for name, k, lo, hi in cases():
        times, counts = {}, {}
        for b in names:
            fn = lambda: kernels.count_in_ball(k.code, k.params, lo, hi, center, 1.0, h, b)
            counts[b] = fn()
            times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        speed = times["python"] / times["compiled"] if "compiled" in times else 1.0
        print(f"{name:<16}" + "".join(f"{times[b]:>16.4f}" for b in names) + f"{speed:>10.1f}  {len(set(counts.values())) == 1}")

    rng = np.random.default_rng(1)
    m = max(args.n // 10, 1)
    shifts = rng.uniform(-1, 1, (m, 10))
    times_ = rng.uniform(0, 1, (m, 10))
    ks = rng.integers(1, 11, m)
    res = {}
    for b in names:
        fn = lambda: kernels.w3_endpoints(shifts, times_, ks, b)
        res[b] = (fn(), min(timeit.repeat(fn, number=1, repeat=args.repeat)))
    agree = all(np.array_equal(res[b][0][i], res[names[0]][0][i]) for b in names for i in (0, 1))
    speed = res["python"][1] / res["compiled"][1] if "compiled" in res else 1.0
    print(f"{'w3 endpoints':<16}" + "".join(f"{res[b][1]:>16.4f}" for b in names) + f"{speed:>10.1f}  {agree}")


if __name__ == "__main__":
    main()
