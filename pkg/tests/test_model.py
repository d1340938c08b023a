from fractions import Fraction

import pytest

from whatif.model import (
    Alphabet,
    And,
    Clause,
    CounterfactualQuery,
    Literal,
    Not,
    Or,
    Program,
    RandomFact,
    ValidationError,
    Var,
    evaluate,
    formula_atoms,
    rename_formula,
    validate_program,
)


def test_sprinkler_is_valid(sprinkler):
    assert validate_program(sprinkler) == []


def test_external_head_is_diagnosed():
    program = Program(
        (Clause("u1", frozenset({Literal("wet")})),),
        (RandomFact("u1", Fraction(1, 2)),),
        Alphabet(frozenset({"wet"}), frozenset({"u1"})),
    )
    diagnostics = validate_program(program)
    assert any("external atom in head" in d for d in diagnostics)


def test_duplicate_fact_is_diagnosed():
    program = Program(
        (),
        (RandomFact("u1", Fraction(1, 2)), RandomFact("u1", Fraction(3, 10))),
    )
    diagnostics = validate_program(program)
    assert any("duplicate random fact" in d for d in diagnostics)


def test_validate_never_raises_on_junk():
    program = Program(
        (Clause("Bad_Atom", frozenset()),),
        (RandomFact("u", Fraction(3, 2)),),
        Alphabet(frozenset({"Bad_Atom"}), frozenset({"u"})),
    )
    diagnostics = validate_program(program)
    assert diagnostics  # reported, not thrown


def test_program_equality_ignores_clause_order(sprinkler):
    reordered = Program(
        tuple(reversed(sprinkler.clauses)), tuple(reversed(sprinkler.facts))
    )
    assert reordered == sprinkler


def test_program_equality_respects_clause_multiplicity():
    clause = Clause("a", frozenset({Literal("u")}))
    fact = (RandomFact("u", Fraction(1, 2)),)
    assert Program((clause,), fact) != Program((clause, clause), fact)


def test_alphabet_rejects_overlap():
    with pytest.raises(ValidationError):
        Alphabet(frozenset({"a"}), frozenset({"a"}))


def test_query_rejects_inconsistent_evidence():
    with pytest.raises(ValidationError):
        CounterfactualQuery(
            Var("a"), frozenset({Literal("b"), Literal("b", False)}), frozenset()
        )


def test_query_allows_evidence_contradicting_interventions():
    query = CounterfactualQuery(
        Var("a"), frozenset({Literal("b")}), frozenset({Literal("b", False)})
    )
    assert Literal("b") in query.evidence


def test_formula_evaluation_and_atoms():
    formula = Or((And((Var("a"), Not(Var("b")))), Var("c")))
    assert formula_atoms(formula) == {"a", "b", "c"}
    assert evaluate(formula, {"a": True, "b": False})
    assert not evaluate(formula, {"a": True, "b": True})
    assert evaluate(formula, {"c": True})
    # missing atoms are false
    assert not evaluate(Var("zzz"), {})


def test_formula_rename():
    formula = And((Var("a"), Not(Var("b"))))
    renamed = rename_formula(formula, {"a": "a__i"})
    assert formula_atoms(renamed) == {"a__i", "b"}
