"""Semantic decision procedures by exhaustive exploration.

Every predicate here works directly from the reduction graph and is meant as
ground truth for the static analysis; none of it is clever on purpose.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

from .core import CanonicalProcess, Polarity, Process, actions, canonical, names, par, size
from .linearity import is_linear
from .semantics import BudgetExceeded, Step, is_deadlocked, reachable

DEFAULT_BUDGET = 200_000

ProcLike = Process | CanonicalProcess


# -- synchronisation predicates ---------------------------------------------


def _top(p: ProcLike, name: str, polarity: Polarity) -> bool:
    return any(
        c.action.name == name and c.action.polarity is polarity for c in canonical(p).components
    )


def pred_in(a: str, p: ProcLike) -> bool:
    return _top(p, a, Polarity.IN)


def pred_out(a: str, p: ProcLike) -> bool:
    return _top(p, a, Polarity.OUT)


def pred_sync(a: str, p: ProcLike) -> bool:
    return pred_in(a, p) and pred_out(a, p)


def pred_wait(a: str, p: ProcLike) -> bool:
    return pred_in(a, p) != pred_out(a, p)


def pred_cin(a: str, p: ProcLike) -> bool:
    return any(x.name == a and x.is_input for x in actions(p))


def pred_cout(a: str, p: ProcLike) -> bool:
    return any(x.name == a and not x.is_input for x in actions(p))


# -- process classes ----------------------------------------------------------


def is_complete(p: ProcLike) -> bool:
    return all(pred_cin(a, p) == pred_cout(a, p) for a in names(p))


def is_top_complete(p: ProcLike) -> bool:
    cp = canonical(p)
    for c in cp.components:
        a = c.action
        if a.is_input and not pred_cout(a.name, cp):
            return False
        if not a.is_input and not pred_cin(a.name, cp):
            return False
    return True


def is_self_deadlocked(p: ProcLike) -> bool:
    return is_deadlocked(p) and is_top_complete(p)


def is_lock_free(p: ProcLike, budget: int = DEFAULT_BUDGET) -> bool:
    """Every waiting top action, in every reachable state, can eventually synchronise."""
    graph = reachable(p, budget)
    # names that can synchronise at some state reachable from each node
    will_sync: dict[CanonicalProcess, set[str]] = {}
    for node in sorted(graph.nodes, key=size):
        syncs = {a for a in names(node) if pred_sync(a, node)}
        for t in graph.successors(node):
            syncs |= will_sync[t]
        will_sync[node] = syncs
    for node in graph.nodes:
        for c in node.components:
            a = c.action.name
            if pred_wait(a, node) and a not in will_sync[node]:
                return False
    return True


@dataclass
class LockWitness:
    trace: list[Step]
    state: CanonicalProcess
    locked: tuple  # sub-multiset of state.components

    @property
    def locked_process(self) -> CanonicalProcess:
        return canonical(par(*self.locked))

    def to_json(self) -> dict:
        return {
            "trace": [s.channel for s in self.trace],
            "state": str(self.state),
            "locked": [str(c) for c in self.locked],
        }


def _sub_multisets(components: tuple, size_: int):
    seen = set()
    for combo in combinations(components, size_):
        if combo not in seen:
            seen.add(combo)
            yield combo


def is_psl(p: ProcLike, budget: int = DEFAULT_BUDGET) -> tuple[bool, LockWitness | None]:
    """Whether some reachable state has a self-deadlocked parallel sub-group.

    This is the predicate alone; membership in the PSL class additionally
    needs :func:`is_complete`. The witness is minimal by trace length, then
    sub-group size, then printed form. ``budget`` bounds states plus
    sub-groups examined; exceeding it raises :class:`BudgetExceeded`.
    """
    graph = reachable(p, budget)
    work = len(graph.nodes)
    parent: dict[CanonicalProcess, Step | None] = {graph.root: None}
    prev: dict[CanonicalProcess, CanonicalProcess] = {}
    level = [graph.root]
    while level:
        best = None
        for node in level:
            comps = node.components
            for k in range(1, len(comps) + 1):
                found = None
                for sub in _sub_multisets(comps, k):
                    work += 1
                    if work > budget:
                        raise BudgetExceeded(budget)
                    if is_self_deadlocked(par(*sub)):
                        key = (k, str(par(*sub)), str(node))
                        if found is None or key < found[0]:
                            found = (key, node, sub)
                if found is not None:
                    if best is None or found[0] < best[0]:
                        best = found
                    break
        if best is not None:
            _, node, sub = best
            trace = []
            while parent[node] is not None:
                trace.append(parent[node])
                node = prev[node]
            trace.reverse()
            return True, LockWitness(trace, best[1], sub)
        nxt = []
        for node in level:
            for s in graph.edges[node]:
                if s.target not in parent:
                    parent[s.target] = s
                    prev[s.target] = node
                    nxt.append(s.target)
        level = nxt
    return False, None


@dataclass
class Classification:
    linear: bool
    complete: bool
    lock_free: bool
    deadlocked: bool
    top_complete: bool
    self_deadlocked: bool
    reaches_self_deadlock: bool  # the predicate, without the completeness requirement
    potentially_self_locking: bool

    def to_json(self) -> dict:
        return asdict(self)


def classify(p: ProcLike, budget: int = DEFAULT_BUDGET) -> Classification:
    cp = canonical(p)
    complete = is_complete(cp)
    reaches, _ = is_psl(cp, budget)
    return Classification(
        linear=is_linear(cp),
        complete=complete,
        lock_free=is_lock_free(cp, budget),
        deadlocked=is_deadlocked(cp),
        top_complete=is_top_complete(cp),
        self_deadlocked=is_self_deadlocked(cp),
        reaches_self_deadlock=reaches,
        potentially_self_locking=complete and reaches,
    )


def psl_characterization_holds(p: ProcLike, budget: int = DEFAULT_BUDGET) -> bool:
    """PSL coincides with complete-but-not-lock-free on ``p``."""
    c = classify(p, budget)
    return (c.complete and not c.lock_free) == c.potentially_self_locking
