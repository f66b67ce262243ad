import pytest
from hypothesis import given

from ccslock.core import canonical, par, parse
from ccslock.oracle import (
    Classification,
    classify,
    is_complete,
    is_lock_free,
    is_psl,
    is_self_deadlocked,
    is_top_complete,
    pred_cin,
    pred_cout,
    pred_in,
    pred_out,
    pred_sync,
    pred_wait,
    psl_characterization_holds,
)
from ccslock.semantics import BudgetExceeded, reachable

from conftest import MIXED_TOP, processes


def test_in_out_predicates(named):
    assert pred_in("a", parse("a.0"))
    assert not pred_in("a", parse("b.a.0"))
    assert pred_in("a", named["P1"])
    assert not pred_out("a", named["P1"])


def test_sync_wait(named):
    both = parse("a.0 | ~a.0")
    assert pred_sync("a", both) and not pred_wait("a", both)
    assert not pred_sync("a", parse("a.0")) and pred_wait("a", parse("a.0"))
    assert not pred_sync("a", named["P1"]) and pred_wait("a", named["P1"])


def test_lock_free_examples(named):
    assert is_lock_free(parse("0"))
    for k in ("P1", "P2", "P3", "P4"):
        assert not is_lock_free(named[k]), k
    assert is_lock_free(parse(MIXED_TOP))


def test_capability_predicates():
    assert pred_cin("a", parse("b.a.0"))
    p = parse("a.b.0 | ~b.~c.0")
    assert pred_cin("a", p) and not pred_cout("a", p)
    p5 = parse("a.~b.c.0 | ~c.b.~a.0")
    assert pred_cin("c", p5) and pred_cout("c", p5)


def test_completeness(named):
    assert not is_complete(parse("a.b.0 | ~b.~c.0"))
    assert is_complete(named["P1"])
    assert is_complete(parse("0"))


def test_top_completeness(named):
    # P1 tops: a (with ~a under c), ~b (with b under a), c (with ~c under ~b)
    p1 = named["P1"]
    assert pred_cout("a", p1) and pred_cin("b", p1) and pred_cout("c", p1)
    assert is_top_complete(p1)
    assert not is_top_complete(parse("a.0"))
    assert is_top_complete(parse("0"))


def test_self_deadlock(named):
    assert is_self_deadlocked(named["P1"])
    assert not is_self_deadlocked(named["P2"])
    assert not is_self_deadlocked(parse("0"))


def test_psl_p1_witness(named):
    found, w = is_psl(named["P1"])
    assert found
    assert w.trace == []
    assert len(w.locked) == 3


def test_psl_p2_witness(named):
    found, w = is_psl(named["P2"])
    assert found
    assert [s.channel for s in w.trace] == ["d"]
    assert w.state == canonical(named["P1"])


def test_psl_negative():
    assert is_psl(parse("a.0 | ~a.0")) == (False, None)


def test_witness_prefers_smallest_group():
    # a.~a.0 locks on its own; the b-pair is innocent
    _, w = is_psl(parse("b.0 | ~b.0 | a.~a.0 | c.d.~c.~d.0"))
    assert w.trace == []
    assert [str(c) for c in w.locked] == ["a.~a.0"]


def test_classify_p3():
    assert classify(parse("a.~a.0")) == Classification(
        linear=True, complete=True, lock_free=False, deadlocked=True, top_complete=True,
        self_deadlocked=True, reaches_self_deadlock=True, potentially_self_locking=True,
    )


def test_classify_inert():
    assert classify(parse("0")) == Classification(
        linear=True, complete=True, lock_free=True, deadlocked=False, top_complete=True,
        self_deadlocked=False, reaches_self_deadlock=False, potentially_self_locking=False,
    )


def test_classify_mixed_top():
    c = classify(parse(MIXED_TOP))
    assert c.linear and c.complete and c.lock_free and not c.potentially_self_locking


def test_psl_needs_completeness():
    # a.~a.0 locks itself, but b has no partner: predicate holds, class membership does not
    c = classify(parse("a.~a.0 | b.0"))
    assert c.reaches_self_deadlock and not c.complete and not c.potentially_self_locking


def test_psl_characterization_examples(named):
    assert psl_characterization_holds(named["P1"])
    assert psl_characterization_holds(parse("0"))


def test_budget_is_explicit():
    # lock-free, so every state and every sub-group must be examined
    wide = parse(" | ".join(f"x{i}.0 | ~x{i}.0" for i in range(6)))
    with pytest.raises(BudgetExceeded):
        is_psl(wide, budget=1000)
    with pytest.raises(BudgetExceeded):
        reachable(parse("a.0 | ~a.0 | b.0 | ~b.0"), budget=2)


@given(processes)
def test_classification_invariants(p):
    c = classify(p)
    if c.self_deadlocked:
        assert c.deadlocked and c.top_complete
    if c.potentially_self_locking:
        assert c.complete


@given(processes)
def test_witness_group_cannot_be_unlocked(p):
    found, w = is_psl(p)
    if not found:
        return
    group = w.locked_process
    assert is_self_deadlocked(group)
    for comp in group.components:
        a = comp.action
        occurs = pred_cout if a.is_input else pred_cin
        assert occurs(a.name, group)


def test_witness_monotone(complete_corpus):
    for p in complete_corpus[:300]:
        found, w = is_psl(p)
        if found:
            again, w2 = is_psl(w.state)
            assert again and w2.trace == []


def _normal_form_is_inert(p):
    stuck = reachable(p).stuck()
    assert len(stuck) == 1  # linear processes are confluent
    return len(stuck[0]) == 0


def test_psl_matches_normal_form_on_complete_corpus(complete_corpus):
    # independent route: a complete linear process locks iff it cannot run to 0
    for p in complete_corpus[:500]:
        assert classify(p).potentially_self_locking == (not _normal_form_is_inert(p))
