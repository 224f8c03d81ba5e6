"""Time the compiled and pure-numpy kernel paths side by side.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each path runs in a fresh interpreter so the environment flag takes effect.
Compile time for the numba path is reported separately from the warm timings.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
t0 = time.perf_counter()
from commitlab._accel import USE_NUMBA
from commitlab.beliefs import MedianBelief
from commitlab.contest import ElectionModel, IdealPair, LEFT
from commitlab.preferences import UtilitySpec
from commitlab.solver import best_response, enumerate_equilibria, extremal_equilibria

model = ElectionModel(UtilitySpec.exponential(), MedianBelief.triangular(0.4), IdealPair(0.1, 0.85))
best_response(model, LEFT, 0.6)
warmup = time.perf_counter() - t0

def clock(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        s = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - s)
    return best

R = {repeat}
out = {{
    "numba": USE_NUMBA,
    "import_and_warmup_s": warmup,
    "best_response_x200_s": clock(lambda: [best_response(model, LEFT, 0.2 + 0.003 * i) for i in range(200)], R),
    "extremal_equilibria_s": clock(lambda: extremal_equilibria(model), R),
    "enumerate_equilibria_201_s": clock(lambda: enumerate_equilibria(model, 201), R),
}}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("COMMITLAB_DISABLE_NUMBA", None)
    if disable:
        env["COMMITLAB_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKLOAD.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    keys = [k for k in fast if k.endswith("_s")]
    print(f"{'task':30s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for k in keys:
        print(f"{k:30s} {fast[k]:10.4f} {slow[k]:10.4f} {slow[k] / fast[k]:8.1f}x")


if __name__ == "__main__":
    main()
