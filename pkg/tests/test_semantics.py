import random
from fractions import Fraction

import pytest

from generators import random_acyclic_program, random_formula
from whatif.model import And, Not, Or, Program, Var, NegativeCycleError
from whatif.parser import parse_problog
from whatif.semantics import (
    Classification,
    check_unique_supported_models,
    dependency_graph,
    marginal,
    minimal_model,
    world_probability,
    worlds,
)


def test_sprinkler_dependency_graph(sprinkler):
    graph = dependency_graph(sprinkler)
    positive_edges = {(s, d) for s, d, pos in graph.edges if pos}
    assert positive_edges == {
        ("szn_spr_sum", "sprinkler"),
        ("szn_spr_sum", "rain"),
        ("rain", "wet"),
        ("sprinkler", "wet"),
        ("wet", "slippery"),
    }
    negative_edges = {(s, d) for s, d, pos in graph.edges if not pos}
    assert negative_edges == {("szn_spr_sum", "rain")}


def test_two_cycle_detected():
    program = parse_problog("a :- b. b :- a.")
    graph = dependency_graph(program)
    assert ("a", "b", True) in graph.edges and ("b", "a", True) in graph.edges
    assert check_unique_supported_models(program) is Classification.STRATIFIED_CYCLIC


def test_negative_self_loop():
    program = parse_problog("a :- \\+a.")
    graph = dependency_graph(program)
    assert ("a", "a", False) in graph.edges
    assert check_unique_supported_models(program) is Classification.NEGATIVE_CYCLE


def test_sprinkler_is_acyclic(sprinkler):
    assert check_unique_supported_models(sprinkler) is Classification.ACYCLIC


def test_negative_two_cycle():
    program = parse_problog("a :- \\+b. b :- \\+a.")
    assert check_unique_supported_models(program) is Classification.NEGATIVE_CYCLE


def test_minimal_model_sprinkler(sprinkler):
    world = {"u1": True, "u2": True, "u3": False, "u4": False}
    assert minimal_model(sprinkler, world) == {
        "szn_spr_sum": True,
        "sprinkler": True,
        "rain": False,
        "wet": True,
        "slippery": True,
    }


def test_minimal_model_empty_program():
    assert minimal_model(Program(), {}) == {}


def test_minimal_model_closed_world_negation():
    program = parse_problog("a :- \\+b.")
    assert minimal_model(program, {}) == {"a": True, "b": False}


def test_minimal_model_rejects_negative_cycle():
    program = parse_problog("a :- \\+b. b :- \\+a.")
    with pytest.raises(NegativeCycleError):
        minimal_model(program, {})


def test_minimal_model_stratified_cycle():
    program = parse_problog("a :- b. b :- a. c :- \\+a.")
    assert minimal_model(program, {}) == {"a": False, "b": False, "c": True}


def test_world_probability(sprinkler):
    all_true = {f"u{i}": True for i in range(1, 5)}
    assert world_probability(sprinkler, all_true) == Fraction(21, 1000)  # 0.021
    mixed = {"u1": True, "u2": True, "u3": False, "u4": True}
    assert world_probability(sprinkler, mixed) == Fraction(189, 1000)  # 0.189
    assert world_probability(Program(), {}) == 1


def test_world_probabilities_sum_to_one(sprinkler):
    assert sum(world_probability(sprinkler, w) for w in worlds(sprinkler)) == 1


def test_marginal_sprinkler(sprinkler):
    assert marginal(sprinkler, Var("sprinkler")) == Fraction(7, 20)
    assert marginal(sprinkler, Var("slippery")) == Fraction(133, 200)  # 0.665


def test_marginal_tautology(sprinkler):
    assert marginal(sprinkler, Or((Var("rain"), Not(Var("rain"))))) == 1


def test_marginal_additivity():
    rng = random.Random(11)
    for _ in range(25):
        program = random_acyclic_program(rng, max_externals=6)
        atoms = sorted(program.internals | program.externals)
        phi = random_formula(rng, atoms)
        psi = random_formula(rng, atoms)
        both = marginal(program, And((phi, psi)))
        only = marginal(program, And((phi, Not(psi))))
        assert both + only == marginal(program, phi)
        assert 0 <= both + only <= 1


def test_minimal_model_monotone_without_negation():
    rng = random.Random(5)
    for _ in range(25):
        program = random_acyclic_program(rng, max_externals=5, negation=False)
        externals = sorted(program.externals)
        world = {u: rng.random() < 0.5 for u in externals}
        base = minimal_model(program, world)
        flip = next((u for u in externals if not world[u]), None)
        if flip is None:
            continue
        bigger = dict(world, **{flip: True})
        larger = minimal_model(program, bigger)
        assert all(larger[a] for a in base if base[a])
