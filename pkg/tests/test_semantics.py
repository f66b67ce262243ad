from hypothesis import given

from ccslock.core import CanonicalProcess, canonical, names, parse, size
from ccslock.linearity import is_linear
from ccslock.oracle import is_complete, pred_cin, pred_cout, pred_sync
from ccslock.semantics import Step, is_deadlocked, reachable, render_trace, steps

from conftest import processes


def test_single_redex():
    assert steps(canonical(parse("a.0 | ~a.0"))) == [Step("a", CanonicalProcess(()))]


def test_p1_has_no_steps(named):
    assert steps(canonical(named["P1"])) == []


def test_p2_reduces_to_p1(named):
    assert steps(canonical(named["P2"])) == [Step("d", canonical(named["P1"]))]


def test_non_linear_terms_enumerate_every_pair():
    out = steps(parse("a.b.0 | a.c.0 | ~a.0"))
    assert [s.channel for s in out] == ["a", "a"]
    assert {str(s.target) for s in out} == {"a.c.0 | b.0", "a.b.0 | c.0"}


def test_reachable_inert():
    g = reachable(parse("0"))
    assert g.nodes == [CanonicalProcess(())]
    assert g.edges[g.root] == []


def test_reachable_one_step():
    assert len(reachable(parse("a.0 | ~a.0")).nodes) == 2


def test_reachable_p2(named):
    g = reachable(named["P2"])
    p1 = canonical(named["P1"])
    assert p1 in g.nodes and g.edges[p1] == []


def test_graph_nodes_deduplicated():
    # the two interleavings meet in the same state
    g = reachable(parse("a.0 | ~a.0 | b.0 | ~b.0"))
    assert len(g.nodes) == 4


def test_is_deadlocked(named):
    assert not is_deadlocked(parse("0"))
    assert is_deadlocked(named["P1"])
    assert not is_deadlocked(parse("a.0 | ~a.0"))


def test_trace_rendering(named):
    g = reachable(named["P2"])
    assert render_trace(g.edges[g.root]) == "--d--> a.b.0 | c.~a.0 | ~b.~c.0"


@given(processes)
def test_steps_consume_one_pair(p):
    src = canonical(p)
    for s in steps(src):
        assert size(s.target) == size(src) - 2
        assert pred_sync(s.channel, src)


@given(processes)
def test_graph_is_acyclic_and_rooted(p):
    g = reachable(p)
    assert g.nodes[0] == g.root
    for node in g.nodes:
        for t in g.successors(node):
            assert size(t) < size(node)
    assert set(g.descendants(g.root)) == set(g.nodes)
    assert g.depth() <= size(p) // 2


def test_reduction_properties_on_linear_corpus(linear_corpus):
    for p in linear_corpus:
        assert is_linear(p)
        g = reachable(p)
        complete = is_complete(p)
        for node in g.nodes:
            assert names(node) <= names(p)
            if complete:
                assert is_complete(node)
            for s in g.edges[node]:
                assert s.channel not in names(s.target)
                assert names(s.target) | {s.channel} == names(node)
                assert is_linear(s.target)
            for a in names(p):
                # persistence of capabilities
                if pred_cin(a, p):
                    assert pred_cin(a, node) or a not in names(node)
                if pred_cout(a, p):
                    assert pred_cout(a, node) or a not in names(node)
