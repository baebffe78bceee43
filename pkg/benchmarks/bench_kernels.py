#!/usr/bin/env python3
"""Head-to-head timing of the compiled and NumPy slot-kernel backends.

Runs each kernel over a sweep of widths at a fixed modulus and prints ns/op
per backend plus the speedup of the compiled core.  The interesting regimes
are width 1 (per-slot-key experiments: dispatch overhead dominates) and the
packed widths 2^10..2^15 (replication experiments: memory traffic dominates).

Usage:
    python3 benchmarks/bench_kernels.py [--t 65537] [--widths 1,64,1024,32768]
                                        [--repeat 5] [--target-ms 80]
"""

import argparse
import timeit

import numpy as np

from vhelab.kernels import numpy_backend

try:
    from vhelab.kernels import _fastcore
except ImportError:
    _fastcore = None


def _bench(fn, args, repeat, target_ms):
    """Best-of-`repeat` ns per call, auto-scaling the inner loop."""
    loops, t = 1, 0.0
    while True:
        t = timeit.timeit(lambda: fn(*args), number=loops)
        if t * 1000 >= target_ms or loops > 10**8:
            break
        loops *= 4
    best = min(timeit.repeat(lambda: fn(*args), number=loops, repeat=repeat))
    return best / loops * 1e9


def _cases(width, t, rng):
    a = rng.integers(0, t, width, dtype=np.uint64)
    b = rng.integers(1, t, width, dtype=np.uint64)
    phi = t - 1 if t == 65537 else None
    yield "add_vv", (a, b, t)
    yield "sub_vv", (a, b, t)
    yield "mul_vv", (a, b, t)
    yield "add_vs", (a, 12345 % t, t)
    yield "mul_vs", (a, 12345 % t, t)
    yield "pow_vs", (a, phi or 18, t)
    yield "geom_sum_v", (b, phi or 18, t)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", type=int, default=65537)
    ap.add_argument("--widths", default="1,64,1024,32768")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--target-ms", type=float, default=80.0)
    opts = ap.parse_args()

    widths = [int(w) for w in opts.widths.split(",")]
    rng = np.random.default_rng(0)
    backends = [("py", numpy_backend)]
    if _fastcore is not None:
        backends.append(("c", _fastcore))
    else:
        print("compiled core not built; timing the NumPy backend only")

    header = f"{'kernel':<12}{'width':>8}" + "".join(
        f"{name + ' ns/op':>14}" for name, _ in backends
    )
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(f"modulus t = {opts.t}")
    print(header)
    print("-" * len(header))

    for width in widths:
        for kernel, args in _cases(width, opts.t, rng):
            row = f"{kernel:<12}{width:>8}"
            times = []
            for _, mod in backends:
                ns = _bench(getattr(mod, kernel), args, opts.repeat, opts.target_ms)
                times.append(ns)
                row += f"{ns:>14.1f}"
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.2f}x"
            print(row)

    # the two hottest composite shapes from the attack circuits
    print()
    if _fastcore is not None:
        for label, fn_args in (
            ("pow phi w=32768", ("pow_vs", (rng.integers(0, opts.t, 32768, dtype=np.uint64), opts.t - 1, opts.t))),
            ("geom phi w=1", ("geom_sum_v", (rng.integers(1, opts.t, 1, dtype=np.uint64), opts.t - 1, opts.t))),
        ):
            kernel, args = fn_args
            py = _bench(getattr(numpy_backend, kernel), args, opts.repeat, opts.target_ms)
            cc = _bench(getattr(_fastcore, kernel), args, opts.repeat, opts.target_ms)
            print(f"{label:<20} py {py/1e3:>10.1f} us/op   c {cc/1e3:>10.1f} us/op   {py/cc:>6.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
