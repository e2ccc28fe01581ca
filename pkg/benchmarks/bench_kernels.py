"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from polarlines import build_polar, field_of_order, hyperbolic_geometry, standard_form
from polarlines.kernels import COMPILED, CKernel, PyKernel

CASES = [("symplectic", 4, 4), ("hermitian", 4, 9)]


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench(case, repeat):
    fam, d, q = case
    P = hyperbolic_geometry(build_polar(standard_form(fam, d, field_of_order(q))))
    rng = random.Random(1)
    seeds = [sum(1 << p for p in rng.sample(range(P.n), 3)) for _ in range(200)]
    kernels = {"python": PyKernel(P.n, P.lines)}
    if COMPILED:
        kernels["compiled"] = CKernel(P.n, P.lines)
    rows = {}
    for name, k in kernels.items():
        planes = k.planes(False, True)[0]
        rows[name] = {
            "planes": best(lambda: k.planes(False, True), repeat),
            "closure x200": best(lambda: [k.closure(s) for s in seeds], repeat),
            "pair scan": best(lambda: [k.pair_generation_violations(X, 1) for X in planes[:50]],
                              repeat),
        }
    return P, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not COMPILED:
        print("compiled kernel unavailable; timing the Python fallback only")
    for case in CASES:
        P, rows = bench(case, args.repeat)
        print(f"\n{case[0]} d={case[1]} q={case[2]}: {P.n} points, {len(P.lines)} lines")
        print(f"  {'kernel':<14}" + "".join(f"{b:>10}" for b in rows))
        for task in rows["python"]:
            line = f"  {task:<14}" + "".join(f"{rows[b][task]:>9.4f}s" for b in rows)
            if "compiled" in rows:
                line += f"   x{rows['python'][task] / max(rows['compiled'][task], 1e-9):.1f}"
            print(line)


if __name__ == "__main__":
    main()
