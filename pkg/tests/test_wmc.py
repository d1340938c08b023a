import random
from fractions import Fraction

import pytest

from generators import random_acyclic_program, random_formula
from whatif.model import (
    And,
    Literal,
    Not,
    Var,
    ValidationError,
    ZeroEvidenceError,
)
from whatif.parser import parse_problog
from whatif.semantics import marginal
from whatif.transforms import twin
from whatif.wmc import (
    WeightedCnf,
    add_formula,
    conditional,
    dump_dimacs,
    marginal_wmc,
    to_weighted_cnf,
    wmc,
)
from whatif import counterfactual


def test_single_rule_completion():
    program = parse_problog("a :- u. 0.5::u.")
    cnf = to_weighted_cnf(program)
    assert cnf.weights[cnf.var_map["u"]] == (Fraction(1, 2), Fraction(1, 2))
    assert cnf.weights[cnf.var_map["a"]] == (Fraction(1), Fraction(1))
    assert wmc(cnf, [cnf.var_map["a"]]) == Fraction(1, 2)


def test_ruleless_internal_is_false():
    program = parse_problog("a :- u, \\+b. 0.5::u.")
    cnf = to_weighted_cnf(program)
    assert (-cnf.var_map["b"],) in cnf.clauses
    assert wmc(cnf, [cnf.var_map["a"]]) == Fraction(1, 2)


def test_inapplicable_body():
    program = parse_problog("a :- u, \\+u. 0.5::u.")
    assert marginal_wmc(program, Var("a")) == 0


def test_sprinkler_wmc(sprinkler):
    cnf = to_weighted_cnf(sprinkler)
    assert wmc(cnf, []) == 1
    assert wmc(cnf, [cnf.var_map["sprinkler"]]) == Fraction(7, 20)


def test_rejects_cyclic_programs():
    with pytest.raises(ValidationError):
        to_weighted_cnf(parse_problog("a :- b. b :- a."))


def test_free_variables_count():
    weights = {v: (Fraction(1), Fraction(1)) for v in range(1, 6)}
    cnf = WeightedCnf(5, [], weights, {})
    assert wmc(cnf) == 32


def test_unknown_assumption_rejected():
    cnf = WeightedCnf(1, [], {1: (Fraction(1), Fraction(1))}, {})
    with pytest.raises(ValidationError):
        wmc(cnf, [7])


def test_twin_sprinkler_counts(sprinkler, sprinkler_query):
    transformed, query, evidence = twin(sprinkler, sprinkler_query)
    cnf = to_weighted_cnf(transformed)
    assumptions = [cnf.literal(lit) for lit in sorted(evidence)]
    assert wmc(cnf, assumptions) == Fraction(7, 20)
    with_query, root = add_formula(cnf, query)
    assert wmc(with_query, assumptions + [root]) == Fraction(7, 200)  # 0.035


def test_assumption_monotonicity(sprinkler):
    cnf = to_weighted_cnf(sprinkler)
    base = wmc(cnf, [cnf.var_map["wet"]])
    assert wmc(cnf, [cnf.var_map["wet"], cnf.var_map["rain"]]) <= base


def test_count_invariant_under_clause_permutation(sprinkler):
    cnf = to_weighted_cnf(sprinkler)
    reference = wmc(cnf, [cnf.var_map["slippery"]])
    rng = random.Random(1)
    for _ in range(5):
        shuffled = cnf.copy()
        rng.shuffle(shuffled.clauses)
        assert wmc(shuffled, [cnf.var_map["slippery"]]) == reference


def test_conditional_examples(sprinkler):
    assert conditional(sprinkler, Var("slippery"), {Literal("sprinkler")}) == 1
    assert conditional(sprinkler, Var("sprinkler"), frozenset()) == Fraction(7, 20)
    with pytest.raises(ZeroEvidenceError):
        conditional(sprinkler, Var("rain"), {Literal("sprinkler"), Literal("wet", False)})


def test_oracle_equivalence_random_suite():
    rng = random.Random(99)
    for _ in range(60):
        program = random_acyclic_program(rng, max_externals=8)
        formula = random_formula(rng, sorted(program.internals | program.externals))
        assert marginal_wmc(program, formula) == marginal(program, formula)


def test_float_mode_close_to_exact(sprinkler):
    exact = marginal_wmc(sprinkler, Var("slippery"))
    approx = marginal_wmc(sprinkler, Var("slippery"), exact=False)
    assert abs(float(exact) - approx) < 1e-9


def test_dump_dimacs_format(sprinkler):
    cnf = to_weighted_cnf(sprinkler)
    text = dump_dimacs(cnf)
    lines = text.splitlines()
    assert lines[0] == f"p cnf {cnf.var_count} {len(cnf.clauses)}"
    assert any(line.startswith("c p weight ") and line.endswith(" 0") for line in lines)
    assert all(line.endswith(" 0") for line in lines[1:])


def test_counter_backends_agree():
    from whatif import wmc as wmc_mod

    rng = random.Random(21)
    for _ in range(20):
        program = random_acyclic_program(rng, max_externals=8)
        formula = random_formula(rng, sorted(program.internals))
        exact = marginal_wmc(program, formula)
        approx = marginal_wmc(program, formula, exact=False)
        assert abs(float(exact) - approx) < 1e-9
