import pytest

from whatif.model import CounterfactualQuery, Literal, Var
from whatif.parser import parse_problog

SPRINKLER_TEXT = """\
0.5::u1. 0.7::u2. 0.1::u3. 0.6::u4.
szn_spr_sum :- u1.  sprinkler :- szn_spr_sum, u2.
rain :- szn_spr_sum, u3.    rain :- \\+szn_spr_sum, u4.
wet :- rain.    wet :- sprinkler. slippery :- wet.
"""

TWIN_SPRINKLER_TEXT = """\
0.5::u1. 0.7::u2. 0.1::u3. 0.6::u4.
szn_spr_sum__e :- u1. sprinkler__e :- szn_spr_sum__e, u2.
rain__e :- szn_spr_sum__e, u3.    rain__e :- \\+szn_spr_sum__e, u4.
wet__e :- rain__e. wet__e :- sprinkler__e. slippery__e :- wet__e.
szn_spr_sum__i :- u1.
rain__i :- szn_spr_sum__i, u3. rain__i :- \\+szn_spr_sum__i, u4.
wet__i :- rain__i.  wet__i :- sprinkler__i. slippery__i :- wet__i.
"""


@pytest.fixture
def sprinkler():
    return parse_problog(SPRINKLER_TEXT)


@pytest.fixture
def sprinkler_query():
    return CounterfactualQuery(
        Var("slippery"),
        frozenset({Literal("sprinkler"), Literal("slippery")}),
        frozenset({Literal("sprinkler", False)}),
    )


@pytest.fixture
def sprinkler_file(tmp_path):
    path = tmp_path / "sprinkler.pl"
    path.write_text(SPRINKLER_TEXT)
    return path
