import pytest
from hypothesis import strategies as st

from ccslock.core import INERT, Action, Par, Polarity, Prefix, parse
from ccslock.corpus import GenParams, generate

NAMED = {
    "P1": "a.b.0 | ~b.~c.0 | c.~a.0",
    "P2": "d.(a.b.0 | ~b.~c.0) | ~d.c.~a.0",
    "P3": "a.~a.0",
    "P4": "a . ( b.~a.0 | ~b.0 )",
    "P5": "a.~b.c.0 | ~c.b.~a.0",
}
MIXED_TOP = "(a.~b.0 | b.0) | ~a.0"

# names <= 4, depth <= 5, width <= 4, every used name with both polarities
COMPLETE_PARAMS = GenParams(seed=0, names=4, max_depth=5, max_width=4, force_complete=True)


@pytest.fixture(scope="session")
def named():
    return {k: parse(v) for k, v in NAMED.items()}


@pytest.fixture(scope="session")
def mixed_top():
    return parse(MIXED_TOP)


@pytest.fixture(scope="session")
def complete_corpus():
    return list(generate(COMPLETE_PARAMS, 2000))


@pytest.fixture(scope="session")
def linear_corpus():
    return list(generate(GenParams(seed=10_000, names=4, max_depth=4, max_width=3), 1000))


actions_st = st.builds(Action, st.sampled_from("abcd"), st.sampled_from(list(Polarity)))

# arbitrary (possibly non-linear) process terms
processes = st.recursive(
    st.just(INERT),
    lambda inner: st.one_of(
        st.builds(Prefix, actions_st, inner),
        st.builds(Par, inner, inner),
    ),
    max_leaves=10,
)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
