"""Pure-Python weighted model counter.

DPLL-style: unit propagation, connected-component decomposition and a
size-bounded LRU component cache.  Branching picks the highest-degree
variable, ties broken by lowest index.  Works with any numeric weight type;
exact when weights are `Fraction`.
"""
from __future__ import annotations

import sys
from collections import OrderedDict
from typing import Iterable, Sequence

DEFAULT_CACHE_CAP = 1 << 20


class ModelCounter:
    """Counts over a fixed clause set; one instance per query (mutable cache)."""

    def __init__(
        self,
        clauses: Sequence[Sequence[int]],
        weights: dict[int, tuple],
        cache_cap: int = DEFAULT_CACHE_CAP,
    ):
        self.clauses = [tuple(c) for c in clauses]
        self.weights = weights
        self.wsum = {v: wt + wf for v, (wt, wf) in weights.items()}
        self.cache: OrderedDict[frozenset, object] = OrderedDict()
        self.cache_cap = cache_cap
        self.one = next(iter(weights.values()))[0] * 0 + 1 if weights else 1

    def count(self, assumptions: Iterable[int] = ()):
        clauses = list(self.clauses) + [(lit,) for lit in assumptions]
        mentioned = {abs(lit) for c in clauses for lit in c}
        result = self.one
        for var in self.weights:
            if var not in mentioned:
                result *= self.wsum[var]
        if clauses:
            limit = sys.getrecursionlimit()
            needed = 4 * len(self.weights) + 1000
            if needed > limit:
                sys.setrecursionlimit(needed)
            result *= self._solve(clauses)
        return result

    def _propagate(self, clauses):
        """Exhaustive unit propagation; returns (reduced, assigned) or None on conflict."""
        assigned: dict[int, bool] = {}
        while True:
            units = [c[0] for c in clauses if len(c) == 1]
            if not units:
                return clauses, assigned
            for lit in units:
                var = abs(lit)
                value = lit > 0
                if assigned.setdefault(var, value) != value:
                    return None
            reduced = []
            for clause in clauses:
                keep = []
                satisfied = False
                for lit in clause:
                    value = assigned.get(abs(lit))
                    if value is None:
                        keep.append(lit)
                    elif value == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not keep:
                    return None
                reduced.append(tuple(keep))
            clauses = reduced

    def _solve(self, clauses):
        before = {abs(lit) for c in clauses for lit in c}
        propagated = self._propagate(clauses)
        if propagated is None:
            return self.one * 0
        clauses, assigned = propagated
        factor = self.one
        for var, value in assigned.items():
            wt, wf = self.weights[var]
            factor *= wt if value else wf
        remaining = {abs(lit) for c in clauses for lit in c}
        for var in before:
            if var not in assigned and var not in remaining:
                factor *= self.wsum[var]
        if not clauses:
            return factor
        for component in self._components(clauses, remaining):
            factor *= self._solve_component(component)
            if not factor:
                break
        return factor

    def _components(self, clauses, variables):
        clause_vars = [frozenset(abs(lit) for lit in c) for c in clauses]
        var_clauses: dict[int, list[int]] = {}
        for idx, cvars in enumerate(clause_vars):
            for var in cvars:
                var_clauses.setdefault(var, []).append(idx)
        seen_vars: set[int] = set()
        seen_clauses: set[int] = set()
        for start in sorted(variables):
            if start in seen_vars:
                continue
            stack = [start]
            seen_vars.add(start)
            member_clauses: list[int] = []
            while stack:
                var = stack.pop()
                for idx in var_clauses[var]:
                    if idx in seen_clauses:
                        continue
                    seen_clauses.add(idx)
                    member_clauses.append(idx)
                    for other in clause_vars[idx]:
                        if other not in seen_vars:
                            seen_vars.add(other)
                            stack.append(other)
            yield [clauses[idx] for idx in sorted(member_clauses)]

    def _solve_component(self, clauses):
        key = frozenset(clauses)
        cached = self.cache.get(key)
        if cached is not None:
            self.cache.move_to_end(key)
            return cached
        degree: dict[int, int] = {}
        for clause in clauses:
            for lit in clause:
                var = abs(lit)
                degree[var] = degree.get(var, 0) + 1
        branch = max(degree, key=lambda v: (degree[v], -v))
        # branch weights are applied by unit propagation in the subproblems
        result = self._solve(clauses + [(branch,)]) + self._solve(clauses + [(-branch,)])
        self.cache[key] = result
        if len(self.cache) > self.cache_cap:
            self.cache.popitem(last=False)
        return result
