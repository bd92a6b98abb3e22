"""Benchmark the prime-field elimination kernel: compiled vs numpy fallback.

Two views:
  * microbenchmark of reduced row echelon on random dense matrices;
  * an end-to-end sweep (the coarse-graded generator-invariance workload)
    run in subprocesses with the backend pinned via WALLCOH_NO_SPEEDUPS.

Usage: python3 benchmarks/bench_rank.py
"""

import os
import random
import subprocess
import sys
import time

import numpy as np

from wallcoh.linalg import _HAVE_SPEEDUPS, _rref_modp_numpy

P = 2147483629

SWEEP_SNIPPET = r"""
import time
from wallcoh import GradedRingSpec, validate_ring, FieldSpec
from wallcoh.cech import certified_degree, side_generators
from wallcoh.linalg import backend_name

spec = GradedRingSpec.from_strings(
    ["x", "y", "u", "v"], [[1, 0], [1, 0], [0, 1], [0, 1]], [1, -1],
    field_spec=FieldSpec("prime-field", 2147483629))
ring = validate_ring(spec)
gens = side_generators(ring, "plus", ["x", "y", "x + y"])
t0 = time.perf_counter()
for m in range(-6, 4):
    for n in range(-2, 3):
        certified_degree(ring, gens, (m, n))
print(f"{backend_name()}: {time.perf_counter() - t0:.2f}s")
"""


def random_matrix(rng, rows, cols):
    return np.array(
        [[rng.randrange(P) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    )


def bench_micro():
    rng = random.Random(7)
    print("reduced row echelon mod p, dense random matrices")
    print(f"{'shape':>12} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for rows, cols in [(20, 30), (60, 80), (120, 160), (240, 320)]:
        mats = [random_matrix(rng, rows, cols) for _ in range(8)]
        t0 = time.perf_counter()
        for m in mats:
            _rref_modp_numpy(m.copy() % P, P)
        t_numpy = (time.perf_counter() - t0) / len(mats)
        if _HAVE_SPEEDUPS:
            from wallcoh import _speedups

            t0 = time.perf_counter()
            for m in mats:
                _speedups.rref_modp(m.copy() % P, P)
            t_comp = (time.perf_counter() - t0) / len(mats)
            ratio = f"{t_numpy / t_comp:7.1f}x"
        else:
            t_comp, ratio = float("nan"), "    n/a"
        print(f"{rows}x{cols:>8} {t_numpy * 1e3:9.2f}ms "
              f"{t_comp * 1e3:9.2f}ms {ratio}")


def bench_sweep():
    print("\nend-to-end invariance sweep (55 fine degrees, 3 generators)")
    for label, env_extra in (("compiled", {}),
                             ("numpy", {"WALLCOH_NO_SPEEDUPS": "1"})):
        env = dict(os.environ, **env_extra)
        out = subprocess.run([sys.executable, "-c", SWEEP_SNIPPET],
                             capture_output=True, text=True, env=env)
        print(f"  requested {label:>8}: {out.stdout.strip() or out.stderr}")


if __name__ == "__main__":
    print(f"compiled kernel available: {_HAVE_SPEEDUPS}")
    bench_micro()
    bench_sweep()
