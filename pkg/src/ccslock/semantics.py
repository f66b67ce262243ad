"""Reduction semantics on canonical forms, and the reachability graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import CanonicalProcess, Process, canonical, par, size


@dataclass(frozen=True)
class Step:
    channel: str
    target: CanonicalProcess

    def render(self) -> str:
        return f"--{self.channel}--> {self.target}"


def steps(p: Process | CanonicalProcess) -> list[Step]:
    """All single reductions of ``p``, one per matching pair of top-level prefixes.

    Every pair is enumerated, so non-linear terms with several redexes on one
    channel yield several steps.
    """
    comps = canonical(p).components
    result = []
    for i, ci in enumerate(comps):
        for j in range(i + 1, len(comps)):
            cj = comps[j]
            if ci.action.name != cj.action.name or ci.action.polarity == cj.action.polarity:
                continue
            rest = comps[:i] + comps[i + 1 : j] + comps[j + 1 :]
            target = canonical(par(ci.cont, cj.cont, *rest))
            result.append(Step(ci.action.name, target))
    result.sort(key=lambda s: (s.channel, str(s.target)))
    return result


@dataclass
class ReductionGraph:
    root: CanonicalProcess
    nodes: list[CanonicalProcess] = field(default_factory=list)  # BFS order
    edges: dict[CanonicalProcess, list[Step]] = field(default_factory=dict)

    def successors(self, node: CanonicalProcess) -> list[CanonicalProcess]:
        return [s.target for s in self.edges[node]]

    def stuck(self) -> list[CanonicalProcess]:
        return [n for n in self.nodes if not self.edges[n]]

    def depth(self) -> int:
        """Length of the longest reduction sequence from the root."""
        longest: dict[CanonicalProcess, int] = {}
        for node in sorted(self.nodes, key=size):
            longest[node] = max((1 + longest[t] for t in self.successors(node)), default=0)
        return longest[self.root]

    def descendants(self, node: CanonicalProcess) -> list[CanonicalProcess]:
        """Nodes reachable from ``node`` (itself included), BFS order."""
        seen = {node}
        order = [node]
        queue = deque([node])
        while queue:
            for t in self.successors(queue.popleft()):
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    queue.append(t)
        return order


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"exploration budget of {budget} exceeded")
        self.budget = budget


def reachable(p: Process | CanonicalProcess, budget: int | None = None) -> ReductionGraph:
    """Breadth-first closure of :func:`steps` from ``canonical(p)``.

    Terminates on every input since each step removes two prefixes; ``budget``
    caps the number of distinct states explored.
    """
    root = canonical(p)
    graph = ReductionGraph(root)
    graph.nodes.append(root)
    queue = deque([root])
    seen = {root}
    while queue:
        node = queue.popleft()
        out = steps(node)
        graph.edges[node] = out
        for s in out:
            if s.target in seen:
                continue
            seen.add(s.target)
            graph.nodes.append(s.target)
            if budget is not None and len(graph.nodes) > budget:
                raise BudgetExceeded(budget)
            queue.append(s.target)
    return graph


def is_deadlocked(p: Process | CanonicalProcess) -> bool:
    cp = canonical(p)
    return len(cp) > 0 and not steps(cp)


def render_trace(trace: list[Step]) -> str:
    return "\n".join(s.render() for s in trace)
