"""Time the compiled kernels against the numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--rows N] [--repeat K]

Each kernel is timed on the same random batch with both backends and the
results are checked to agree before the speedup is reported.
"""

import argparse
import time

import numpy as np

from holomap._kernels import _pykernels

try:
    from holomap._kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def make_cases(rows, rng):
    Z = np.ascontiguousarray(
        (rng.normal(size=(rows, 4)) + 1j * rng.normal(size=(rows, 4))) * 0.4
    )
    t = np.ascontiguousarray(Z[:, 0] * 0.6)
    a = np.asarray([0.2, 0.1j, -0.3, 0.05 + 0.05j])
    s = float(np.sqrt(1 - (np.abs(a) ** 2).sum()))
    M = _pykernels.mobius_scalar(Z, a, s)
    return [
        ("abs2p_sum", (Z, np.asarray([2.0, 3.0, 1.5, 2.5]))),
        ("pow_int", (Z, np.asarray([2, 5, 1, 3], dtype=np.int64))),
        ("blaschke", (t, np.asarray([0.5, -0.2 + 0.1j]), 1j)),
        ("mobius_scalar", (Z, a, s)),
        ("cpow", (M, 1.0 / 3.0)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=200000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _ckernels is None:
        print("compiled kernels are not available; nothing to compare")
        return

    rng = np.random.default_rng(0)
    cases = make_cases(args.rows, rng)
    print(f"rows={args.rows} repeat={args.repeat} (best of)")
    print(f"{'kernel':<14} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, call_args in cases:
        py_fn = getattr(_pykernels, name)
        c_fn = getattr(_ckernels, name)
        if not np.allclose(py_fn(*call_args), c_fn(*call_args), rtol=1e-12, atol=1e-12):
            raise SystemExit(f"backend disagreement in {name}")
        t_py = timeit(py_fn, call_args, args.repeat)
        t_c = timeit(c_fn, call_args, args.repeat)
        print(f"{name:<14} {t_py * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
