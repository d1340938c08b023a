"""Source-to-source rewrites: interventions and the twin-network construction."""
from __future__ import annotations

from typing import Iterable

from .model import (
    Alphabet,
    Clause,
    CounterfactualQuery,
    Formula,
    Literal,
    Program,
    ValidationError,
    consistent,
    ensure_internals,
    formula_atoms,
    rename_formula,
)

EVIDENCE_SUFFIX = "__e"
INTERVENTION_SUFFIX = "__i"


def intervene(program: Program, interventions: Iterable[Literal]) -> Program:
    """Erase every clause whose head is intervened; add a fact for positive forcings.

    Atoms absent from the program are accepted: erasure is vacuous and a
    positive forcing adds the atom to the internal alphabet.
    """
    interventions = frozenset(interventions)
    if not consistent(interventions):
        raise ValidationError("inconsistent interventions")
    forced = {lit.atom for lit in interventions}
    external = forced & program.externals
    if external:
        raise ValidationError(f"cannot intervene on external atoms: {sorted(external)}")
    clauses = [c for c in program.clauses if c.head not in forced]
    clauses.extend(Clause(lit.atom) for lit in sorted(interventions) if lit.positive)
    internals = program.internals | {lit.atom for lit in interventions if lit.positive}
    return Program(tuple(clauses), program.facts, Alphabet(internals, program.externals))


def _rename(atom: str, internals: frozenset[str], suffix: str) -> str:
    return atom + suffix if atom in internals else atom


def _rename_clause(clause: Clause, internals: frozenset[str], suffix: str) -> Clause:
    body = frozenset(
        Literal(_rename(lit.atom, internals, suffix), lit.positive) for lit in clause.body
    )
    return Clause(clause.head + suffix, body)


def twin(
    program: Program, query: CounterfactualQuery
) -> tuple[Program, Formula, frozenset[Literal]]:
    """Build the duplicated program with shared random facts.

    Internal atoms are copied with an evidence-side and an intervention-side
    suffix; the interventions are applied to the intervention copy.  Returns
    the transformed program, the renamed query formula and the renamed
    evidence literals.
    """
    query_atoms = {lit.atom for lit in query.evidence | query.interventions}
    query_atoms |= formula_atoms(query.query)
    program = ensure_internals(program, query_atoms - program.externals)

    for atom in sorted(program.internals | program.externals):
        if atom.endswith(EVIDENCE_SUFFIX) or atom.endswith(INTERVENTION_SUFFIX):
            raise ValidationError(
                f"atom {atom} collides with the twin-copy suffix convention"
            )

    internals = program.internals
    clauses = []
    for suffix in (EVIDENCE_SUFFIX, INTERVENTION_SUFFIX):
        clauses.extend(_rename_clause(c, internals, suffix) for c in program.clauses)
    twin_alphabet = Alphabet(
        frozenset(a + s for a in internals for s in (EVIDENCE_SUFFIX, INTERVENTION_SUFFIX)),
        program.externals,
    )
    twinned = Program(tuple(clauses), program.facts, twin_alphabet)

    rename_i = {a: a + INTERVENTION_SUFFIX for a in internals}
    rename_e = {a: a + EVIDENCE_SUFFIX for a in internals}
    interventions = frozenset(
        Literal(rename_i[lit.atom], lit.positive) for lit in query.interventions
    )
    transformed = intervene(twinned, interventions)
    renamed_query = rename_formula(query.query, rename_i)
    evidence = frozenset(Literal(rename_e[lit.atom], lit.positive) for lit in query.evidence)
    return transformed, renamed_query, evidence
