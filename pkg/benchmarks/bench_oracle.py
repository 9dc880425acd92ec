"""
Time the compiled sweep against the pure-Python one.

    python benchmarks/bench_oracle.py --n 6 7 8 --repeat 3
"""
import argparse
import time

from dipole_atlas import _sweep_py

try:
    from dipole_atlas import _sweep_c
except ImportError:
    _sweep_c = None


def best_of(fn, n, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(n)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[6, 7, 8])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _sweep_c is None:
        print("compiled kernel not built; only timing the Python kernel")
    print(f"{'n':>3} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for n in args.n:
        t_py, r_py = best_of(_sweep_py.sweep, n, args.repeat)
        if _sweep_c is None:
            print(f"{n:>3} {t_py:12.4f} {'-':>13} {'-':>8}")
            continue
        t_c, r_c = best_of(_sweep_c.sweep, n, args.repeat)
        if r_c != r_py:
            raise SystemExit(f"kernels disagree at n={n}")
        print(f"{n:>3} {t_py:12.4f} {t_c:13.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
