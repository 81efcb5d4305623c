"""Compiled kernel vs the pure-Python fallback on the workloads that dominate.

    python3 benchmarks/bench_kernel.py [--repeat N]

Each backend runs in its own interpreter (the choice is made at import time),
with cold caches, and the best of N runs is reported.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
from qdual import kernel
from qdual.catalog import catalog_get
from qdual.hopf import check_hopf, delta_n
from qdual.ncalg import overlap_check, random_words

def timed(f):
    t0 = time.perf_counter()
    f()
    return time.perf_counter() - t0

def normal_forms():
    p = catalog_get("Fq_SL3_hat", check=False).presentation
    p._cache.clear()
    rng = random.Random(1)
    for w in random_words(p, rng, 150, 6):
        p.normal_word(w)

def deltas():
    p = catalog_get("Uq_sl2_hat", check=False).presentation
    p._cache.clear()
    for x in ("E*F", "E*F*H", "Gamma*E*F"):
        delta_n(p.parse(x), 4)

def overlaps():
    p = catalog_get("Fq_SL3_hat", check=False).presentation
    p._cache.clear()
    overlap_check(p)

def hopf():
    p = catalog_get("Uq_hn_s_hat(3)", check=False).presentation
    p._cache.clear()
    check_hopf(p, sample_budget=10)

out = {"backend": kernel.BACKEND}
for name, f in [("normal forms (SL3, 150 words)", normal_forms),
                ("delta_4 (sl2)", deltas),
                ("overlap check (SL3)", overlaps),
                ("Hopf suite (h_3)", hopf)]:
    out[name] = timed(f)
print(json.dumps(out))
"""


def run(pure: bool) -> dict:
    env = dict(os.environ, QDUAL_PURE_PYTHON="1" if pure else "0")
    r = subprocess.run([sys.executable, "-c", WORKLOAD], capture_output=True, text=True, env=env)
    if r.returncode:
        sys.exit(r.stderr)
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    best = {}
    for pure in (False, True):
        runs = [run(pure) for _ in range(args.repeat)]
        backend = runs[0]["backend"]
        best[backend] = {k: min(r[k] for r in runs) for k in runs[0] if k != "backend"}
    if "cython" not in best:
        print("compiled kernel not available; only the fallback was timed")
    names = list(next(iter(best.values())))
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {'cython':>9}  {'python':>9}  speedup")
    for n in names:
        c = best.get("cython", {}).get(n)
        p = best["python"][n]
        ratio = f"{p / c:6.2f}x" if c else "   n/a"
        cs = f"{c:8.3f}s" if c else "      n/a"
        print(f"{n:<{width}}  {cs}  {p:8.3f}s  {ratio}")


if __name__ == "__main__":
    main()
