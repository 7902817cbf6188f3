"""Time the compiled and numpy gate kernels on identical workloads.

Run with ``python benchmarks/bench_kernels.py [--qubits 4 7 10] [--batch 64]``.
"""

import argparse
import timeit

import numpy as np

from qadv import _pykernels

try:
    from qadv import _ckernels
except ImportError:
    _ckernels = None


def workload(impl, states, u2, u4, m):
    for q in range(m):
        impl.apply_1q(states, u2, q)
    for q in range(m - 1):
        impl.apply_cnot(states, q, q + 1)
        impl.apply_2q(states, u4, q, q + 1)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qubits", type=int, nargs="+", default=[4, 7, 10, 14])
    ap.add_argument("--batch", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    u2, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    u4, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    u2, u4 = np.ascontiguousarray(u2), np.ascontiguousarray(u4)
    impls = {"python": _pykernels}
    if _ckernels is not None:
        impls["cython"] = _ckernels
    else:
        print("compiled extension not available; timing numpy only")

    print(f"{'qubits':>6} {'batch':>6} " + " ".join(f"{k + ' ms':>12}" for k in impls) + f" {'speedup':>8}")
    for m in args.qubits:
        b = max(1, args.batch >> max(0, m - 10))
        base = rng.normal(size=(b, 1 << m)) + 1j * rng.normal(size=(b, 1 << m))
        times = {}
        for name, impl in impls.items():
            states = base.copy()
            number = 10
            t = min(timeit.repeat(lambda: workload(impl, states, u2, u4, m), number=number, repeat=args.repeat))
            times[name] = 1e3 * t / number
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{m:>6} {b:>6} " + " ".join(f"{times[k]:>12.3f}" for k in impls) + f" {speedup:>8.2f}")


if __name__ == "__main__":
    main()
