"""Benchmark the compiled word kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--words N] [--len L] [--n DIM]

The corpus is deterministic; both backends run the same calls.  The last
section times two end-to-end workloads (reduct confluence sampling and
bounded strong-reduct enumeration) under each backend by re-importing the
package with PSN_PURE_PYTHON toggled.
"""

import argparse
import random
import subprocess
import sys
import time

from pseudospace import _kernels_py

try:
    from pseudospace import _speedups
except ImportError:
    _speedups = None


def corpus(count: int, max_len: int, n: int) -> list[tuple]:
    rng = random.Random(20_12)
    words = []
    for _ in range(count):
        length = rng.randint(0, max_len)
        letters = []
        for _ in range(length):
            lo = rng.randint(0, n)
            letters.append((lo, rng.randint(lo, n)))
        words.append(tuple(letters))
    return words


def time_backend(module, words, repeats: int = 3) -> dict[str, float]:
    out = {}
    for name in ("is_reduced", "normal_form", "reduce_word"):
        fn = getattr(module, name)
        samples = []
        for _ in range(repeats):
            started = time.perf_counter()
            for w in words:
                fn(w)
            samples.append(time.perf_counter() - started)
        out[name] = min(samples)
    return out


def bench_workload(pure: bool) -> float:
    env = {"PSN_PURE_PYTHON": "1"} if pure else {}
    code = (
        "import time, random\n"
        "from pseudospace.oracle import SuiteConfig, run_suite\n"
        "t = time.perf_counter()\n"
        "run_suite(SuiteConfig('words-confluence', seed=5, cases=4000))\n"
        "run_suite(SuiteConfig('words-strong', seed=5, cases=400))\n"
        "print(time.perf_counter() - t)\n"
    )
    import os

    proc = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={**os.environ, **env},
    )
    return float(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--words", type=int, default=30_000)
    parser.add_argument("--len", dest="max_len", type=int, default=8)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--skip-workloads", action="store_true")
    args = parser.parse_args()

    words = corpus(args.words, args.max_len, args.n)
    print(f"corpus: {len(words)} words, max length {args.max_len}, N={args.n}")
    pure = time_backend(_kernels_py, words)
    if _speedups is None:
        print("compiled backend not built; showing pure timings only")
        for name, seconds in pure.items():
            print(f"  {name:12s} pure {seconds * 1e3:8.1f} ms")
        return
    fast = time_backend(_speedups, words)
    print(f"{'kernel':14s}{'pure':>10s}{'compiled':>10s}{'speedup':>9s}")
    for name in pure:
        ratio = pure[name] / fast[name] if fast[name] else float("inf")
        print(
            f"{name:14s}{pure[name] * 1e3:9.1f}ms{fast[name] * 1e3:9.1f}ms"
            f"{ratio:8.1f}x"
        )
    if args.skip_workloads:
        return
    print("\nend-to-end workloads (confluence 4000 cases + strong 400 cases):")
    t_pure = bench_workload(pure=True)
    t_fast = bench_workload(pure=False)
    print(f"  pure     {t_pure:6.2f}s")
    print(f"  compiled {t_fast:6.2f}s   speedup {t_pure / t_fast:4.1f}x")


if __name__ == "__main__":
    main()
