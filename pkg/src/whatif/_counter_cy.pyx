# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled float-mode weighted model counter.

Same algorithm as the pure-Python counter (unit propagation, component
splitting, LRU component cache, highest-degree branching) with C-typed
scalars and double weights.  Variables must be numbered 1..n contiguously.
"""

from collections import OrderedDict

from libc.stdlib cimport free, malloc


cdef class FloatCounter:
    cdef list clauses
    cdef double *wt
    cdef double *wf
    cdef int nvars
    cdef object cache
    cdef Py_ssize_t cache_cap

    def __cinit__(self, clauses, weights, int nvars, Py_ssize_t cache_cap=1 << 20):
        cdef int v
        self.clauses = [tuple(c) for c in clauses]
        self.nvars = nvars
        self.wt = <double *> malloc((nvars + 1) * sizeof(double))
        self.wf = <double *> malloc((nvars + 1) * sizeof(double))
        for v in range(1, nvars + 1):
            self.wt[v], self.wf[v] = weights[v]
        self.cache = OrderedDict()
        self.cache_cap = cache_cap

    def __dealloc__(self):
        free(self.wt)
        free(self.wf)

    def count(self, assumptions=()):
        cdef list clauses = list(self.clauses)
        cdef int lit, v
        cdef double result = 1.0
        for lit in assumptions:
            clauses.append((lit,))
        mentioned = set()
        for c in clauses:
            for lit in c:
                mentioned.add(lit if lit > 0 else -lit)
        for v in range(1, self.nvars + 1):
            if v not in mentioned:
                result *= self.wt[v] + self.wf[v]
        if clauses:
            result *= self._solve(clauses)
        return result

    cdef object _propagate(self, list clauses):
        cdef dict assigned = {}
        cdef int lit, var
        cdef bint value, satisfied
        while True:
            units = [c[0] for c in clauses if len(c) == 1]
            if not units:
                return clauses, assigned
            for lit in units:
                var = lit if lit > 0 else -lit
                value = lit > 0
                if assigned.setdefault(var, value) != value:
                    return None
            reduced = []
            for clause in clauses:
                keep = []
                satisfied = False
                for lit in clause:
                    var = lit if lit > 0 else -lit
                    cur = assigned.get(var)
                    if cur is None:
                        keep.append(lit)
                    elif (<bint> cur) == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not keep:
                    return None
                reduced.append(tuple(keep))
            clauses = reduced

    cdef double _solve(self, list clauses) except? -1.0:
        cdef int lit, var
        cdef double factor = 1.0
        cdef set before = set()
        for c in clauses:
            for lit in c:
                before.add(lit if lit > 0 else -lit)
        propagated = self._propagate(clauses)
        if propagated is None:
            return 0.0
        clauses, assigned = propagated
        for var, value in (<dict> assigned).items():
            factor *= self.wt[var] if value else self.wf[var]
        cdef set remaining = set()
        for c in clauses:
            for lit in c:
                remaining.add(lit if lit > 0 else -lit)
        for var in before:
            if var not in assigned and var not in remaining:
                factor *= self.wt[var] + self.wf[var]
        if not clauses:
            return factor
        for component in self._components(clauses, remaining):
            factor *= self._solve_component(component)
            if factor == 0.0:
                break
        return factor

    cdef list _components(self, list clauses, set variables):
        cdef Py_ssize_t idx
        cdef int lit, var
        clause_vars = [frozenset(l if l > 0 else -l for l in c) for c in clauses]
        cdef dict var_clauses = {}
        for idx in range(len(clause_vars)):
            for var in clause_vars[idx]:
                var_clauses.setdefault(var, []).append(idx)
        cdef set seen_vars = set()
        cdef set seen_clauses = set()
        cdef list components = []
        for start in sorted(variables):
            if start in seen_vars:
                continue
            stack = [start]
            seen_vars.add(start)
            member = []
            while stack:
                var = stack.pop()
                for idx in var_clauses[var]:
                    if idx in seen_clauses:
                        continue
                    seen_clauses.add(idx)
                    member.append(idx)
                    for other in clause_vars[idx]:
                        if other not in seen_vars:
                            seen_vars.add(other)
                            stack.append(other)
            member.sort()
            components.append([clauses[i] for i in member])
        return components

    cdef double _solve_component(self, list clauses) except? -1.0:
        cdef int lit, var, branch, best_degree
        cdef double result
        key = frozenset(clauses)
        cached = self.cache.get(key)
        if cached is not None:
            self.cache.move_to_end(key)
            return <double> cached
        cdef dict degree = {}
        for clause in clauses:
            for lit in clause:
                var = lit if lit > 0 else -lit
                degree[var] = degree.get(var, 0) + 1
        branch = 0
        best_degree = -1
        for var in sorted(degree):
            if degree[var] > best_degree:
                best_degree = degree[var]
                branch = var
        # branch weights are applied by unit propagation in the subproblems
        result = self._solve(clauses + [(branch,)])
        result += self._solve(clauses + [(-branch,)])
        self.cache[key] = result
        if len(self.cache) > self.cache_cap:
            self.cache.popitem(last=False)
        return result
