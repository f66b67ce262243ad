import pytest
from hypothesis import given

from ccslock.core import Polarity, canonical, parse
from ccslock.linearity import LinearityViolation, Usage, check_linear, is_linear, usage
from ccslock.semantics import steps

from conftest import processes


def test_p1_is_linear(named):
    assert check_linear(named["P1"]) == {n: Usage(1, 1) for n in "abc"}


def test_double_input_rejected():
    with pytest.raises(LinearityViolation) as err:
        check_linear(parse("a.~a.a.0"))
    assert (err.value.name, err.value.polarity, err.value.count) == ("a", Polarity.IN, 2)


def test_inert_has_empty_usage():
    assert check_linear(parse("0")) == {}


def test_first_offender_in_name_order():
    with pytest.raises(LinearityViolation) as err:
        check_linear(parse("~c.~c.0 | b.b.0"))
    assert err.value.name == "b"


@given(processes)
def test_linearity_preserved_by_reduction(p):
    if is_linear(p):
        for s in steps(p):
            assert is_linear(s.target)


@given(processes)
def test_linearity_invariant_under_congruence(p):
    assert usage(p) == usage(canonical(p))
