#!/usr/bin/env python3
"""Throughput comparison of the pure-Python and compiled term kernels.

Runs the package's hot operations (sparse multiply-accumulate and point
evaluation) on workloads shaped like the real pipeline: powers of the base
polynomial, the product polynomial expansion of the smallest bundled set,
and batched evaluation of a compiled conjunct.  Results from both backends
are required to match exactly before a timing is reported.

Usage:  python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from triquant import _termops as pure
from triquant.artifact import bundled_artifact
from triquant.poly import Polynomial

try:
    from triquant import _termops_c as compiled
except ImportError:
    compiled = None


def _timed(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def _bench_case(name, make_args, runner, repeat):
    args = make_args()
    t_pure, r_pure = _timed(lambda: runner(pure, *args), repeat)
    row = {"case": name, "pure": t_pure}
    if compiled is not None:
        t_fast, r_fast = _timed(lambda: runner(compiled, *args), repeat)
        if r_pure != r_fast:
            raise AssertionError("backend results differ on %s" % name)
        row["compiled"] = t_fast
        row["speedup"] = t_pure / t_fast if t_fast else float("inf")
    return row


def _terms(p: Polynomial):
    return dict(p.term_items()), len(p.variables)


def case_base_power():
    base = 1 + Polynomial.variable("a") + Polynomial.variable("c")
    p = base**20
    terms, nvars = _terms(p)
    return (terms, nvars)


def run_square(kernel, terms, nvars):
    return kernel.mul_terms(terms, terms, nvars)


def case_product_factors():
    art = bundled_artifact("even", forms="2", expand_w="never")
    factors = sorted(art.form2.w_factors, key=lambda p: p.term_count())
    a, b = factors[-2], factors[-1]
    avars = set(a.variables) | set(b.variables)
    carrier = tuple(sorted(avars))
    a = a + Polynomial.zero(carrier)
    b = b + Polynomial.zero(carrier)
    return (dict(a.term_items()), dict(b.term_items()), len(carrier))


def run_mul(kernel, aterms, bterms, nvars):
    return kernel.mul_terms(aterms, bterms, nvars)


def case_eval_batch():
    art = bundled_artifact("even", forms="1")
    conj = art.form1.conjuncts[0]
    terms, _ = _terms(conj.P)
    rng = random.Random(7)
    points = [
        tuple(rng.randint(0, 10**6) for _ in conj.P.variables) for _ in range(500)
    ]
    return (terms, points)


def run_eval(kernel, terms, points):
    return [kernel.eval_terms(terms, pt) for pt in points]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cases = [
        ("square (2+a+c)^20 -> ^40", case_base_power, run_square),
        ("multiply two W factors (even set)", case_product_factors, run_mul),
        ("evaluate digit-window P at 500 points", case_eval_batch, run_eval),
    ]
    print("compiled kernel available:", compiled is not None)
    rows = [_bench_case(name, make, run, args.repeat) for name, make, run in cases]
    width = max(len(r["case"]) for r in rows)
    for r in rows:
        line = "%-*s  pure %8.4fs" % (width, r["case"], r["pure"])
        if "compiled" in r:
            line += "  compiled %8.4fs  speedup %5.2fx" % (r["compiled"], r["speedup"])
        print(line)


if __name__ == "__main__":
    main()
