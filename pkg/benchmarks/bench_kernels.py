"""Compare the compiled and pure-Python modular kernels.

    python benchmarks/bench_kernels.py [--sizes 3 6 12 24] [--repeat 200]

Reports the median wall time per call for det, dual det, rank and matmul
over GF(2^31 - 1), and the end-to-end time of one verification run on the
four-vertex quiver under each backend.
"""

import argparse
import random
import statistics
import time

from quivinv import kernels
from quivinv.fields import DEFAULT_PRIME
from quivinv.quiver import Quiver
from quivinv.verify import run_all

P = DEFAULT_PRIME


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples)


def kernel_table(sizes, repeat):
    rng = random.Random(0)
    print(f"{'op':<9}{'n':>4}" + "".join(f"{b:>14}" for b in kernels.available_backends()) + "   speedup")
    for n in sizes:
        a = [[rng.randrange(P) for _ in range(n)] for _ in range(n)]
        b = [[rng.randrange(P) for _ in range(n)] for _ in range(n)]
        ops = {
            "det": lambda m: m.det_mod(a, P),
            "dual_det": lambda m: m.det_dual_mod(a, b, P),
            "rank": lambda m: m.rank_mod(a, P),
            "matmul": lambda m: m.matmul_mod(a, b, P),
        }
        for name, op in ops.items():
            times = {be: timed(lambda: op(kernels.backend_module(be)), repeat)
                     for be in kernels.available_backends()}
            row = "".join(f"{times[be] * 1e6:>12.1f}us" for be in times)
            speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
            print(f"{name:<9}{n:>4}{row}   {speed:6.1f}x")


def end_to_end(trials):
    q = Quiver.build(["1", "2", "3", "4"],
                     [("a1", "1", "1"), ("a2", "2", "1"), ("a3", "3", "2"), ("a4", "2", "4")])
    psi = {"1": "a1", "2": "a4", "3": "a3", "4": "a4"}
    fast = kernels._fast
    for be in kernels.available_backends():
        kernels._fast = kernels.backend_module(be)
        try:
            t = time.perf_counter()
            report = run_all(q, psi, 4, trials=trials, seed=0, reduction_trials=0)
            print(f"run_all n=4 trials={trials} [{be}]: {time.perf_counter() - t:.2f}s ({report.verdict})")
        finally:
            kernels._fast = fast


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 6, 12, 24])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--trials", type=int, default=50)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    kernel_table(args.sizes, args.repeat)
    end_to_end(args.trials)


if __name__ == "__main__":
    main()
