"""Time the integer kernels under each backend.

    python benchmarks/bench_kernels.py            # all backends, one table
    python benchmarks/bench_kernels.py --backend numpy

The backend is fixed at import time, so each one runs in its own process.
The first numba call includes compilation; it is reported separately.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

BACKENDS = ["numba", "numpy", "python"]


def _matrices():
    from eqalg.intlinalg import imat

    rng = random.Random(7)
    dense = [imat([[rng.randint(-9, 9) for _ in range(24)] for _ in range(20)]) for _ in range(5)]
    sparse = [
        imat([[rng.choice([-2, -1, 1, 2]) if rng.random() < 0.1 else 0 for _ in range(34)] for _ in range(30)])
        for _ in range(5)
    ]
    return dense, sparse


def overflow_counts() -> dict:
    """How many benchmark matrices the int64 kernel hands back to the exact
    routine because an intermediate would overflow."""
    from eqalg import _kernels
    from eqalg.intlinalg import _to_int64

    dense, sparse = _matrices()
    return {
        "dense": sum(int(_kernels.smith_int64(_to_int64(A))[3]) for A in dense),
        "sparse": sum(int(_kernels.smith_int64(_to_int64(A))[3]) for A in sparse),
    }


def cases():
    from eqalg.graded import thr_fp_ring
    from eqalg.intlinalg import smith
    from eqalg.ringalg import builtin_monoid
    from eqalg.thr import dihedral_pi0

    mats, sparse = _matrices()
    groups = [builtin_monoid(n) for n in ("s3", "d4", "q8", "c4xc2")]
    R = thr_fp_ring(2)
    return {
        "smith dense 20x24 (x5)": lambda: [smith(A) for A in mats],
        "smith sparse 30x34 (x5)": lambda: [smith(A) for A in sparse],
        "dihedral classes (4 groups)": lambda: [dihedral_pi0(G) for G in groups],
        "bidegree counts p=2 (n<=40)": lambda: [R.count(n, 0) for n in range(41)],
    }


def run_one(repeat: int) -> dict:
    from eqalg import _kernels

    out = {"backend": _kernels.BACKEND, "timings": {}}
    for name, fn in cases().items():
        first = timeit.timeit(fn, number=1)
        best = min(timeit.repeat(fn, number=1, repeat=repeat))
        out["timings"][name] = {"first": first, "best": best}
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--backend", choices=BACKENDS)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if args.backend:
        print(json.dumps(run_one(args.repeat)))
        return
    rows = []
    for b in BACKENDS:
        env = dict(os.environ, EQALG_BACKEND=b)
        r = subprocess.run([sys.executable, __file__, "--backend", b, "--repeat", str(args.repeat)],
                           env=env, capture_output=True, text=True, check=True)
        rows.append(json.loads(r.stdout))
    names = list(rows[0]["timings"])
    width = max(len(n) for n in names)
    print(f"{'case':<{width}}  " + "  ".join(f"{r['backend']:>16}" for r in rows))
    for n in names:
        cells = [f"{r['timings'][n]['best'] * 1e3:8.2f} ms" + f" ({r['timings'][n]['first'] * 1e3:.0f})" for r in rows]
        print(f"{n:<{width}}  " + "  ".join(f"{c:>16}" for c in cells))
    print("best of repeats; first call in parentheses (includes numba compilation)")
    fb = overflow_counts()
    print(f"int64 Smith kernel fell back to exact arithmetic on {fb['dense']}/5 dense and {fb['sparse']}/5 sparse matrices")


if __name__ == "__main__":
    main()
