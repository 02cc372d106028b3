"""Timing comparison of the two recursion-scan backends.

Run as: python3 benchmarks/bench_kernels.py [--repeat N]

The scan is a strictly loop-carried complex recursion (each step needs the
renormalized previous step), so vectorizing it in numpy is not possible;
the pure-python fallback pays the interpreter cost per step while the
compiled kernel runs it at native speed. Expect two to three orders of
magnitude between them at large particle numbers.
"""

import argparse
import time

import numpy as np

from rydeit import _kernels
from rydeit.params import ModelParams

SIZES = (1_000, 10_000, 100_000, 1_000_000)
PARAMS = ModelParams(omega_p=0.1, omega_c=1.0, gamma_e=2.0, gamma_r=0.05, delta=0.4, m=1)


def run_backend(scan, m, repeat):
    p = np.empty(m, dtype=np.complex128)
    q = np.empty(m, dtype=np.complex128)
    s = np.empty(m, dtype=np.float64)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        status = scan(
            m, PARAMS.omega_p, PARAMS.omega_c, PARAMS.gamma_e,
            PARAMS.gamma_r, PARAMS.delta, p, q, s,
        )
        best = min(best, time.perf_counter() - t0)
        assert status == 0
    return best, (p[-1], q[-1], s[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _kernels.pq_scan_python)]
    if _kernels.HAVE_NUMBA:
        # one warmup call so the timed runs see a compiled kernel
        run_backend(_kernels.pq_scan_numba, 10, 1)
        backends.append(("numba", _kernels.pq_scan_numba))
    else:
        print("numba not importable; timing the python path only")

    print(f"{'m':>10s}" + "".join(f"{name:>14s}" for name, _ in backends) + f"{'speedup':>10s}")
    for m in SIZES:
        times = []
        tails = []
        for name, scan in backends:
            # cap the python path at a size that stays polite
            if name == "python" and m > 100_000:
                times.append(None)
                continue
            dt, tail = run_backend(scan, m, args.repeat)
            times.append(dt)
            tails.append(tail)
        cells = "".join(
            f"{t*1e3:12.2f}ms" if t is not None else f"{'skipped':>14s}" for t in times
        )
        if len(times) == 2 and None not in times:
            cells += f"{times[0]/times[1]:9.1f}x"
        print(f"{m:>10d}" + cells)
        if len(tails) == 2:
            a, b = tails
            drift = max(abs(a[0] - b[0]), abs(a[1] - b[1]), abs(a[2] - b[2]))
            if drift > 1e-12:
                print(f"  WARNING: backend results drift by {drift:.2e}")


if __name__ == "__main__":
    main()
