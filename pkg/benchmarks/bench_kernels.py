"""Compare the compiled and pure-Python CA kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-N wall times for ``evolve`` and ``trajectory`` on the star
CA and a full single-direction refutation pass under each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from array import array

from fischer import _kernels_py
from fischer.ca import star_ca
from fischer.shifts import PowersOfTwo, SGap

try:
    from fischer import _kernels as _compiled
except ImportError:
    _compiled = None


def workloads():
    f = star_ca(SGap(PowersOfTwo()))
    table = array("l", f.table())
    rng = random.Random(0)
    cells = array("l", (rng.choice([0, 1, 1, 2]) for _ in range(4000)))
    short = array("l", cells[:160])
    return {
        "evolve 4000 cells x 500 steps":
            lambda impl: impl.evolve(table, 3, 3, cells, 500),
        "trajectory 160 cells x 20 steps (x200)":
            lambda impl: [impl.trajectory(table, 3, 3, 0, short, -40, 2, -1, 20, 0, 4)
                          for _ in range(200)],
    }


SCAN = ("from fischer.ca import Direction, sensitivity_scan, star_ca;"
        "from fischer.shifts import PowersOfTwo, SGap, Star;"
        "import time; s = Star(SGap(PowersOfTwo())); t = time.perf_counter();"
        "sensitivity_scan(star_ca(s.inner), [Direction(-1, 1)], 6, 20, s);"
        "print(time.perf_counter() - t)")


def scan_time(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["FISCHER_PURE_PYTHON"] = "1"
    else:
        env.pop("FISCHER_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", SCAN], env=env, capture_output=True, text=True,
                         check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    print(f"{'workload':42s} " + " ".join(f"{n:>10s}" for n, _ in impls) + "   speedup")
    for name, fn in workloads().items():
        times = [min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
                 for _, impl in impls]
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
        print(f"{name:42s} " + " ".join(f"{t:10.4f}" for t in times) + f"  {speed}")
    if _compiled:
        py, cy = scan_time(True), scan_time(False)
        print(f"{'scan direction -1/1, |w|<=6, N=20':42s} {py:10.4f} {cy:10.4f}  {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
