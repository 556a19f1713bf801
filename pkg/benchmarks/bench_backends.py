"""Compare the numba and numpy kernel backends.

Each backend runs in its own interpreter with PICARDSCAN_BACKEND set, so the
timings cover exactly what a user gets from the env flag. Reported times are
the best of several repeats after one warm-up call (numba compiles there).

    python3 benchmarks/bench_backends.py [--size 200000] [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from picardscan import kernels
from picardscan.families import get_family
from picardscan.scan import GridSpec, exceptional_set_scan

size, repeat = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)
z = (rng.uniform(-6, 6, size) + 1j * rng.uniform(-6, 6, size)).astype(np.complex128)

def best(fn):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

out = {"backend": kernels.BACKEND}
out["erf"] = best(lambda: kernels.erf(z))
for key in ("example1", "example3", "example4"):
    fam = get_family(key)
    out[f"logderiv_{key}"] = best(lambda: fam.log_derivative(z, 0.7 + 0.2j))
# contour calls evaluate a few hundred nodes at a time
small = z[:512]
ex3 = get_family("example3")
out["logderiv_example3_512x200"] = best(lambda: [ex3.log_derivative(small, 0.7 + 0.2j) for _ in range(200)])
disc = get_family("discrete_exceptional", {"p0": [1, 0], "p1": [-1, 0]})
out["scan_discrete_9x9"] = best(lambda: exceptional_set_scan(disc, GridSpec(-2, 2, -2, 2, 9, 9), 20))
print(json.dumps(out))
"""


def run(backend, size, repeat):
    env = dict(os.environ, PICARDSCAN_BACKEND=backend)
    res = subprocess.run(
        [sys.executable, "-c", CHILD, str(size), str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000, help="points per kernel call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    fast, slow = run("numba", args.size, args.repeat), run("numpy", args.size, args.repeat)
    if fast["backend"] != "numba":
        print("numba is not importable here; both columns use numpy", file=sys.stderr)
    print(f"{'case':<24}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for case in fast:
        if case == "backend":
            continue
        a, b = fast[case], slow[case]
        print(f"{case:<24}{1e3 * a:>12.2f}{1e3 * b:>12.2f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
