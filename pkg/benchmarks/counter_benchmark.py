"""Compare the pure-Python model counter against the compiled extension.

Builds twin-network CNFs from the benchmark generator and times a float-mode
counterfactual count through both kernels on identical inputs.

Usage: python benchmarks/counter_benchmark.py [--n 20,40,60] [--k 1,3,5] [--repeats 3]
"""
from __future__ import annotations

import argparse
import statistics
import time

from whatif import benchgen, transforms, wmc as wmc_mod
from whatif._counter_py import DEFAULT_CACHE_CAP, ModelCounter


def build_case(n: int, k: int, seed: int):
    instance = benchgen.generate_instance(n, k, seed)
    query = benchgen.sample_query(instance, 2, 2, seed)
    program = benchgen.instance_to_program(instance)
    transformed, renamed, evidence = transforms.twin(program, query)
    cnf = wmc_mod.to_weighted_cnf(transformed)
    with_query, root = wmc_mod.add_formula(cnf, renamed)
    assumptions = [with_query.literal(lit) for lit in sorted(evidence)] + [root]
    return with_query, assumptions


def time_kernel(make_counter, cnf, assumptions, repeats: int) -> tuple[float, float]:
    times = []
    answer = None
    for _ in range(repeats):
        counter = make_counter(cnf)
        start = time.perf_counter()
        answer = counter.count(assumptions)
        times.append(time.perf_counter() - start)
    return min(times), answer


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", default="20,40,60")
    parser.add_argument("--k", default="1,3,5")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not wmc_mod.HAVE_COMPILED_COUNTER:
        print("compiled counter not available; timing pure Python only")

    def pure(cnf):
        weights = {v: (float(wt), float(wf)) for v, (wt, wf) in cnf.weights.items()}
        return ModelCounter(cnf.clauses, weights, DEFAULT_CACHE_CAP)

    def compiled(cnf):
        weights = {v: (float(wt), float(wf)) for v, (wt, wf) in cnf.weights.items()}
        return wmc_mod._CompiledFloatCounter(
            cnf.clauses, weights, cnf.var_count, DEFAULT_CACHE_CAP
        )

    print(f"{'n':>4} {'k':>3} {'vars':>6} {'clauses':>8} {'pure_s':>9} {'compiled_s':>10} {'speedup':>8}")
    ratios = []
    for n in (int(x) for x in args.n.split(",")):
        for k in (int(x) for x in args.k.split(",")):
            cnf, assumptions = build_case(n, k, args.seed)
            pure_t, pure_answer = time_kernel(pure, cnf, assumptions, args.repeats)
            if wmc_mod.HAVE_COMPILED_COUNTER:
                fast_t, fast_answer = time_kernel(compiled, cnf, assumptions, args.repeats)
                assert abs(pure_answer - fast_answer) <= 1e-9 * max(1.0, abs(pure_answer))
                ratios.append(pure_t / fast_t if fast_t else float("inf"))
                print(
                    f"{n:>4} {k:>3} {cnf.var_count:>6} {len(cnf.clauses):>8} "
                    f"{pure_t:>9.4f} {fast_t:>10.4f} {pure_t / fast_t:>7.1f}x"
                )
            else:
                print(f"{n:>4} {k:>3} {cnf.var_count:>6} {len(cnf.clauses):>8} {pure_t:>9.4f}")
    if ratios:
        print(f"median speedup: {statistics.median(ratios):.1f}x")


if __name__ == "__main__":
    main()
