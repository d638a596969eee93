"""Compare the compiled GF(2) kernels with the numpy fallback.

    python benchmarks/bench_kernel.py [--sizes 500 1000 2000] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from toricmax import _backend
from toricmax.f2 import F2Matrix
from toricmax.fan import product_fan, projective
from toricmax.report import check_fan


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"python": _backend.python_kernels}
    if _backend.compiled_kernels is not None:
        backends["cython"] = _backend.compiled_kernels
    else:
        print("compiled extension not built; timing the fallback only")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<14}{'n':>6}" + "".join(f"{name:>12}" for name in backends))
    for n in args.sizes:
        m = F2Matrix.from_dense(rng.integers(0, 2, size=(n, n), dtype=np.uint8), n)
        rows = {"echelon_rank": [], "rref": [], "matmul": []}
        for k in backends.values():
            rows["echelon_rank"].append(best_of(lambda: k.echelon_rank(np.array(m.words), n), args.repeat))
            rows["rref"].append(best_of(lambda: k.rref_inplace(np.array(m.words), n), args.repeat))
            if n <= 1000:
                rows["matmul"].append(best_of(lambda: k.matmul(m.words, n, m.words), args.repeat))
        for name, ts in rows.items():
            if ts:
                print(f"{name:<14}{n:>6}" + "".join(f"{t:>11.4f}s" for t in ts))

    p1 = projective(1)
    fan = product_fan(product_fan(p1, p1), product_fan(p1, p1))
    from toricmax import f2

    for name, k in backends.items():
        f2.kernels = k
        t = best_of(lambda: check_fan(fan), 1)
        print(f"{'check P1^4':<14}{'':>6}{name:>12}{t:>11.4f}s")
    f2.kernels = _backend.kernels


if __name__ == "__main__":
    main()
