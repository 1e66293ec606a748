"""Compiled versus numpy kernels.

Part one times ``mul2d`` and ``polydivmod`` directly on random arrays: the
compiled schoolbook kernel, the numpy kernel (FFT and Newton division past a
size threshold), and the dispatched function the package uses.  Part two runs the same
end-to-end computations in subprocesses with and without DRINFELD_NHF_PURE,
so import-time backend selection is exercised as users see it.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from drinfeld_nhf.kernels import (BACKEND, compiled_mul2d, compiled_polydivmod, mul2d, polydivmod,
                                  python_mul2d, python_polydivmod)

END_TO_END = {
    "Delta~ product route, q=3, N=50": "from drinfeld_nhf.texp import delta_product; delta_product(50, 3)",
    "E monic sum, q=2, N=50": "from drinfeld_nhf.texp import false_eisenstein; false_eisenstein(50, 2, 'monicsum')",
    "Carlitz exp/log to tau^5, q=5": (
        "from drinfeld_nhf.checks import check_exp_log\n"
        "check_exp_log(5)"
    ),
    "numeric suite, q=3, 40 u-digits": "from drinfeld_nhf.checks import run_suite; run_suite('numeric', 3)",
    "hyperderivative laws, q=3": (
        "import random\nfrom drinfeld_nhf.checks import check_hyperderivatives\n"
        "check_hyperderivatives(3, random.Random(0))"
    ),
    "local field products, q=3, 80 digits": (
        "from drinfeld_nhf.local_field import LocalField\n"
        "F = LocalField(3, 2, 2, 80)\n"
        "x = F.pi()\n"
        "for _ in range(200): x = x * x.inv() * F.pi()"
    ),
}


def bench_kernel(shape_a, shape_b, rows, p, repeat):
    rng = np.random.default_rng(0)
    a = rng.integers(0, p, size=shape_a)
    b = rng.integers(0, p, size=shape_b)
    ref = python_mul2d(a, b, p, rows)
    out = {"python": min(timeit.repeat(lambda: python_mul2d(a, b, p, rows), number=5, repeat=repeat)) / 5}
    if compiled_mul2d is not None:
        assert np.array_equal(compiled_mul2d(a, b, p, rows), ref)
        out["cython"] = min(timeit.repeat(lambda: compiled_mul2d(a, b, p, rows), number=5, repeat=repeat)) / 5
    out["dispatched"] = min(timeit.repeat(lambda: mul2d(a, b, p, rows), number=5, repeat=repeat)) / 5
    return out


def bench_divmod(la, lb, p, repeat):
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, size=la)
    b = rng.integers(0, p, size=lb)
    b[-1] = 1
    out = {"python": min(timeit.repeat(lambda: python_polydivmod(a, b, p), number=3, repeat=repeat)) / 3}
    if compiled_polydivmod is not None:
        out["cython"] = min(timeit.repeat(lambda: compiled_polydivmod(a, b, p), number=3, repeat=repeat)) / 3
    out["dispatched"] = min(timeit.repeat(lambda: polydivmod(a, b, p), number=3, repeat=repeat)) / 3
    return out


def _row(label, r):
    speed = f"  numpy/dispatched {r['python'] / r['dispatched']:.1f}x" if "cython" in r else ""
    cells = "  ".join(f"{k} {v:.2e}" for k, v in r.items())
    print(f"  {label}: {cells}{speed}")


def run_subprocess(code, pure):
    env = dict(os.environ)
    if pure:
        env["DRINFELD_NHF_PURE"] = "1"
    else:
        env.pop("DRINFELD_NHF_PURE", None)
    prog = ("import time\nt0 = time.perf_counter()\n" + code +
            "\nfrom drinfeld_nhf.kernels import BACKEND\nprint(BACKEND, time.perf_counter() - t0)")
    res = subprocess.run([sys.executable, "-c", prog], capture_output=True, text=True, env=env, check=True)
    backend, secs = res.stdout.split()[-2:]
    return backend, float(secs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend: {BACKEND}")
    print("mul2d (seconds per call)")
    for shape_a, shape_b, rows, p in [((40, 8), (40, 8), 40, 3), ((80, 4), (80, 4), 80, 5),
                                      ((60, 30), (60, 30), 60, 3), ((1, 200), (1, 200), 1, 2)]:
        _row(f"{shape_a} x {shape_b} mod {p}", bench_kernel(shape_a, shape_b, rows, p, args.repeat))
    print("polynomial divmod (seconds per call)")
    for la, lb, p in [(2000, 1000, 5), (6000, 3000, 3), (400, 20, 2)]:
        _row(f"deg {la - 1} by deg {lb - 1} mod {p}", bench_divmod(la, lb, p, args.repeat))
    if compiled_mul2d is None:
        print("compiled kernels are not built; end-to-end comparison skipped")
        return
    print("end to end (seconds, fresh process)")
    for label, code in END_TO_END.items():
        _, t_c = run_subprocess(code, pure=False)
        _, t_p = run_subprocess(code, pure=True)
        print(f"  {label}: cython {t_c:.2f}  python {t_p:.2f}  speedup {t_p / t_c:.1f}x")


if __name__ == "__main__":
    main()
