"""Compare the compiled polynomial kernel with the pure-Python fallback.

Runs a representative workload (exact trigonometry, a full unfolding,
and a cylinder decomposition) in two subprocesses -- one with the
compiled extension, one with FLATBILLIARDS_PURE=1 -- and prints the
timings side by side.

Usage:  python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time
from fractions import Fraction as F

from flatbilliards._kernel import KERNEL
from flatbilliards import cyclotomic as cy
from flatbilliards.catalog import make_entry
from flatbilliards.flow import cylinder_decomposition
from flatbilliards.unfolding import unfold

REPEAT = int(__import__("os").environ["BENCH_REPEAT"])
results = {"kernel": KERNEL}

def timed(name, fn):
    best = min(_run(fn) for _ in range(REPEAT))
    results[name] = best

def _run(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0

def product_chain():
    # exact arithmetic in a degree-96 number field (conductor 420)
    x, y = cy.cos_pi(F(1, 105)), cy.sin_pi(F(2, 105))
    p = cy.embed(1)
    for _ in range(120):
        p = p * y + x
    assert cy.is_rational(p * 0) is not None

def unfold_surfaces():
    for fam, n in [("2", 5), ("5a", None), ("5b", None)]:
        M = unfold(make_entry(fam, n).polygon)
        assert M.genus()["g"] >= 2

def cylinders():
    M = unfold(make_entry("5b").polygon)
    dec = cylinder_decomposition(M, F(1, 30))
    assert dec.cylinder_count() == 4

timed("product chain, conductor 420", product_chain)
timed("unfold three catalog surfaces", unfold_surfaces)
timed("cylinder decomposition (genus 4)", cylinders)
print(json.dumps(results))
"""


def run_variant(pure: bool, repeat: int) -> dict:
    env = dict(os.environ, BENCH_REPEAT=str(repeat))
    if pure:
        env["FLATBILLIARDS_PURE"] = "1"
    else:
        env.pop("FLATBILLIARDS_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best of N runs")
    args = ap.parse_args()

    compiled = run_variant(pure=False, repeat=args.repeat)
    pure = run_variant(pure=True, repeat=args.repeat)
    if compiled["kernel"] != "compiled":
        print(
            "note: compiled extension unavailable; both columns use "
            "the pure-Python kernel",
            file=sys.stderr,
        )

    names = [k for k in compiled if k != "kernel"]
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {'compiled':>10}  {'pure':>10}  speedup")
    for n in names:
        c, p = compiled[n], pure[n]
        print(f"{n:<{width}}  {c * 1e3:>8.1f}ms  {p * 1e3:>8.1f}ms  {p / c:>6.2f}x")


if __name__ == "__main__":
    main()
