"""Time the compiled and pure-Python kernel backends on the same workloads.

Each backend runs in a fresh interpreter because the choice is made at import.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
from lgstate import linalg
from lgstate import BACKEND, RingSpec
from lgstate.groebner import milnor_number
from lgstate.hochschild import hh_truncated_homology
from lgstate.kernels import poly_mul

R = RingSpec(("x", "y", "z"))
x, y, z = R.gens()
out = {"backend": BACKEND}

t = time.perf_counter()
p = (x + 2 * y - z + 1) ** 6
for _ in range(3):
    poly_mul(p.terms, p.terms)
out["poly_mul"] = time.perf_counter() - t

t = time.perf_counter()
milnor_number(R.parse("x^7 + y^6 + z^5 + x^2*y^2*z^2 + 3*x*y^3"))
out["groebner"] = time.perf_counter() - t

rng = random.Random(1)
rows = [{j: rng.randint(-9, 9) for j in rng.sample(range(160), 12)} for _ in range(200)]
t = time.perf_counter()
linalg.rank(rows)
out["elimination"] = time.perf_counter() - t

S = RingSpec(("x",))
t = time.perf_counter()
hh_truncated_homology(S.parse("x^3"), 4, 8)
out["hochschild"] = time.perf_counter() - t
print(json.dumps(out))
"""


def run(pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["LGSTATE_PURE_PYTHON"] = "1"
    else:
        env.pop("LGSTATE_PURE_PYTHON", None)
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    best = {}
    for pure in (False, True):
        runs = [run(pure) for _ in range(args.repeat)]
        name = runs[0]["backend"]
        best[name] = {k: min(r[k] for r in runs) for k in runs[0] if k != "backend"}
    names = list(best)
    print(f"{'workload':<12}" + "".join(f"{n:>12}" for n in names) + (f"{'speedup':>10}" if len(names) == 2 else ""))
    for k in best[names[0]]:
        row = f"{k:<12}" + "".join(f"{best[n][k]:>11.3f}s" for n in names)
        if len(names) == 2 and best[names[0]][k] > 0:
            row += f"{best[names[1]][k] / best[names[0]][k]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
