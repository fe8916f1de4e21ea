#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python fallback.

Times the raw strata-multiplication kernel on dense truncated series and an
end-to-end torsion computation (the surgery-oracle shape that dominates real
runs).  Results are exact on both paths; only wall time differs.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import statistics
import time
from fractions import Fraction


def random_strata(rng, rank, cap, per_degree):
    strata = [dict() for _ in range(cap + 1)]
    strata[0][()] = Fraction(1)
    for d in range(1, cap + 1):
        for _ in range(per_degree):
            mono = tuple(rng.randint(1, rank) for _ in range(d))
            strata[d][mono] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return strata


def bench_kernel(kernel, pairs, cap, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a, b in pairs:
            kernel.mul_strata(a, b, cap)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench_end_to_end(repeat):
    """Torsion of a degree-3 surgery presentation at genus 2 on each backend."""
    import os
    import subprocess
    import sys

    code = r"""
import time
from cyltor.clasper import OneLoopClasper, one_loop_presentation, surgery_factor
from cyltor.cylinder import torsion, trivial_cylinder
from cyltor.words import parse_word
import cyltor

c = OneLoopClasper(3, (parse_word('g1 g2'), parse_word('g3'), parse_word('G4 g1')),
                   parse_word('g2'), (1, 0, 1))
t0 = time.perf_counter()
pres = one_loop_presentation(c, genus=2)
diff = torsion(pres, 8).torsion.log - torsion(trivial_cylinder(2), 8).torsion.log
assert diff == surgery_factor(c, 2, 8).log
print(f'{cyltor.BACKEND} {time.perf_counter() - t0:.3f}')
"""
    out = {}
    for env_name, extra in (("cython", {}), ("python", {"CYLTOR_PURE": "1"})):
        best = None
        for _ in range(repeat):
            env = dict(os.environ, **extra)
            res = subprocess.run([sys.executable, "-c", code], env=env,
                                 capture_output=True, text=True, check=True)
            backend, seconds = res.stdout.split()
            if backend != env_name:
                print(f"  (skipping {env_name}: backend resolved to {backend})")
                best = None
                break
            seconds = float(seconds)
            best = seconds if best is None else min(best, seconds)
        if best is not None:
            out[env_name] = best
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    from cyltor import _kernel_py

    try:
        from cyltor import _kernel as compiled
    except ImportError:
        compiled = None

    rng = random.Random(0)
    print("kernel microbenchmark: 40 products of dense rank-4 series")
    for cap, per_degree in ((4, 20), (5, 40), (6, 60)):
        pairs = [
            (random_strata(rng, 4, cap, per_degree), random_strata(rng, 4, cap, per_degree))
            for _ in range(40)
        ]
        py_best, py_med = bench_kernel(_kernel_py, pairs, cap, args.repeat)
        line = f"  cap={cap} terms/deg={per_degree}: python {py_best * 1e3:8.1f} ms"
        if compiled is not None:
            cy_best, cy_med = bench_kernel(compiled, pairs, cap, args.repeat)
            line += f"   cython {cy_best * 1e3:8.1f} ms   speedup x{py_best / cy_best:.2f}"
        print(line)

    print("end-to-end: degree-3 surgery oracle at genus 2, cap 8")
    results = bench_end_to_end(max(2, args.repeat // 2))
    if "python" in results:
        line = f"  python {results['python']:.3f} s"
        if "cython" in results:
            line += (f"   cython {results['cython']:.3f} s"
                     f"   speedup x{results['python'] / results['cython']:.2f}")
        print(line)


if __name__ == "__main__":
    main()
