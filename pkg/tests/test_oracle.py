import random
from fractions import Fraction

import pytest

from generators import random_acyclic_program, random_counterfactual_query
from whatif.counterfactual import answer_intervention, conditional
from whatif.model import CounterfactualQuery, Literal, Var, ZeroEvidenceError
from whatif.oracle import abduction_action_prediction


def test_sprinkler_counterfactual(sprinkler, sprinkler_query):
    assert abduction_action_prediction(sprinkler, sprinkler_query) == Fraction(1, 10)


def test_empty_evidence_is_plain_intervention(sprinkler):
    query = CounterfactualQuery(
        Var("wet"), frozenset(), frozenset({Literal("rain", False)})
    )
    expected = answer_intervention(sprinkler, Var("wet"), {Literal("rain", False)})
    assert abduction_action_prediction(sprinkler, query) == expected


def test_empty_query_is_conditional(sprinkler):
    query = CounterfactualQuery(Var("wet"), frozenset({Literal("slippery")}))
    expected = conditional(sprinkler, Var("wet"), {Literal("slippery")})
    assert abduction_action_prediction(sprinkler, query) == expected


def test_abduction_pins_error_terms(sprinkler):
    # observing no season fixes u1 false, and rain then depends only on u3
    query = CounterfactualQuery(
        Var("rain"),
        frozenset({Literal("szn_spr_sum", False)}),
        frozenset({Literal("szn_spr_sum")}),
    )
    assert abduction_action_prediction(sprinkler, query) == Fraction(1, 10)


def test_zero_evidence(sprinkler):
    query = CounterfactualQuery(
        Var("rain"), frozenset({Literal("wet"), Literal("slippery", False)})
    )
    with pytest.raises(ZeroEvidenceError):
        abduction_action_prediction(sprinkler, query)


def test_answers_are_probabilities():
    rng = random.Random(31)
    for _ in range(30):
        program = random_acyclic_program(rng, max_internals=4, max_externals=5)
        query = random_counterfactual_query(rng, program)
        answer = abduction_action_prediction(program, query)
        assert 0 <= answer <= 1
