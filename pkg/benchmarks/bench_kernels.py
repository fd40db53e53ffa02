"""Compare the numba kernels against the pure-numpy fallback.

Each backend runs in its own subprocess (the backend is fixed at import
time by HEISENBERG_ISO_PURE_NUMPY).  Timings exclude one warm-up call so
that JIT compilation or cache loading is not counted.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from heisenberg_iso import BACKEND
from heisenberg_iso.families import random_family, sphere_set
from heisenberg_iso.geodesics import ode_trajectory
from heisenberg_iso.isoperimetry import deficit
from heisenberg_iso.pansu import PansuSphere, sphere_area
from heisenberg_iso.radial import set_perimeter

repeat = int(sys.argv[1])
p0 = np.zeros((8, 5)); p0[:, -1] = -np.pi / 4
v0 = np.random.default_rng(0).standard_normal((8, 4))
v0 /= np.linalg.norm(v0, axis=1, keepdims=True)
fam = random_family(1, 50, seed=0)
sphere = sphere_set(1.0, 2, 400)

cases = {
    "rk4_8x10000": lambda: ode_trajectory(1.0, p0, v0, np.pi, 10_000),
    "sphere_area_n2": lambda: sphere_area(PansuSphere(2, 1.0), 1e-12),
    "perimeter_random_50": lambda: [set_perimeter(E, 1e-10) for E in fam],
    "deficit_sphere_400": lambda: deficit(sphere, 1e-10),
}
out = {"backend": BACKEND}
for name, fn in cases.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["HEISENBERG_ISO_PURE_NUMPY"] = "1" if pure else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'case':<22}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:<22}{fast[key]:>11.4f}s{slow[key]:>11.4f}s{slow[key] / fast[key]:>9.1f}x")


if __name__ == "__main__":
    main()
