"""Logic-program layer: dependency analysis, minimal models, world enumeration.

The enumeration-based `marginal` is the reference implementation the WMC
backend is tested against; it is exact when run in rational mode.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .model import (
    Formula,
    NegativeCycleError,
    Program,
    evaluate,
)

WorldAssignment = Mapping[str, bool]


@dataclass(frozen=True)
class DependencyGraph:
    """Edges run from body atom to head atom, over internal atoms only."""

    vertices: frozenset[str]
    edges: frozenset[tuple[str, str, bool]]  # (source, target, positive)


class Classification(enum.Enum):
    ACYCLIC = "acyclic"
    STRATIFIED_CYCLIC = "stratified_cyclic"
    NEGATIVE_CYCLE = "negative_cycle"


def dependency_graph(program: Program) -> DependencyGraph:
    edges = set()
    for clause in program.clauses:
        for lit in clause.body:
            if lit.atom in program.internals:
                edges.add((lit.atom, clause.head, lit.positive))
    return DependencyGraph(program.internals, frozenset(edges))


def _sccs(vertices: frozenset[str], successors: Mapping[str, list[str]]) -> list[list[str]]:
    """Tarjan's algorithm, iterative; returns SCCs in reverse topological order."""
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = itertools.count()

    for root in sorted(vertices):
        if root in index:
            continue
        work = [(root, iter(successors.get(root, ())))]
        index[root] = lowlink[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            vertex, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = lowlink[succ] = next(counter)
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(successors.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[vertex] = min(lowlink[vertex], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[vertex])
            if lowlink[vertex] == index[vertex]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == vertex:
                        break
                components.append(component)
    return components


def _condensation(program: Program) -> tuple[list[list[str]], DependencyGraph]:
    graph = dependency_graph(program)
    successors: dict[str, list[str]] = {}
    for src, dst, _ in sorted(graph.edges):
        successors.setdefault(src, []).append(dst)
    return _sccs(graph.vertices, successors), graph


def check_unique_supported_models(program: Program) -> Classification:
    """Syntactic classification: acyclicity guarantees unique supported models."""
    components, graph = _condensation(program)
    component_of = {v: i for i, comp in enumerate(components) for v in comp}
    cyclic = False
    for src, dst, positive in graph.edges:
        if component_of[src] != component_of[dst]:
            continue
        if len(components[component_of[src]]) > 1 or src == dst:
            if not positive:
                return Classification.NEGATIVE_CYCLE
            cyclic = True
    return Classification.STRATIFIED_CYCLIC if cyclic else Classification.ACYCLIC


def minimal_model(program: Program, world: WorldAssignment) -> dict[str, bool]:
    """Perfect model of the program joined with the given external assignment.

    Strata follow the SCC condensation in topological order; within a stratum
    a least fixpoint is computed with lower strata and externals held fixed.
    """
    if check_unique_supported_models(program) is Classification.NEGATIVE_CYCLE:
        raise NegativeCycleError("program has a cycle through negation")
    components, _ = _condensation(program)
    values: dict[str, bool] = {a: bool(world.get(a, False)) for a in program.externals}
    values.update(dict.fromkeys(program.internals, False))
    by_head = program.clauses_by_head()
    for component in reversed(components):  # topological order
        members = set(component)
        clauses = [c for head in component for c in by_head.get(head, ())]
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                if values[clause.head]:
                    continue
                if all(values[lit.atom] == lit.positive for lit in clause.body):
                    values[clause.head] = True
                    changed = True
    return {atom: values[atom] for atom in program.internals}


def worlds(program: Program) -> Iterator[dict[str, bool]]:
    """All external assignments, in sorted-atom binary order."""
    atoms = sorted(program.externals)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield dict(zip(atoms, bits))


def world_probability(program: Program, world: WorldAssignment, exact: bool = True):
    probs = program.fact_probs()
    weight = Fraction(1) if exact else 1.0
    for atom in program.externals:
        prob = probs[atom] if exact else float(probs[atom])
        weight *= prob if world[atom] else 1 - prob
    return weight


def marginal(program: Program, formula: Formula, exact: bool = True):
    """Probability of `formula` by enumeration over all possible worlds."""
    total = Fraction(0) if exact else 0.0
    for world in worlds(program):
        model = minimal_model(program, world)
        model.update(world)
        if evaluate(formula, model):
            total += world_probability(program, world, exact)
    return total
