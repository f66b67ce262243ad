"""Linear use of names: each name at most once as input and once as output."""

from __future__ import annotations

from dataclasses import dataclass

from .core import CanonicalProcess, Polarity, Process, actions


@dataclass
class Usage:
    inputs: int = 0
    outputs: int = 0

    def count(self, polarity: Polarity) -> int:
        return self.inputs if polarity is Polarity.IN else self.outputs


class LinearityViolation(ValueError):
    def __init__(self, name: str, polarity: Polarity, count: int):
        kind = "input" if polarity is Polarity.IN else "output"
        super().__init__(f"name {name!r} used {count} times as {kind}")
        self.name = name
        self.polarity = polarity
        self.count = count


def usage(p: Process | CanonicalProcess) -> dict[str, Usage]:
    counts: dict[str, Usage] = {}
    for a in actions(p):
        u = counts.setdefault(a.name, Usage())
        if a.is_input:
            u.inputs += 1
        else:
            u.outputs += 1
    return dict(sorted(counts.items()))


def check_linear(p: Process | CanonicalProcess) -> dict[str, Usage]:
    """Return per-name usage, or raise on the first over-used name (sorted order)."""
    counts = usage(p)
    for name, u in counts.items():
        for pol in (Polarity.IN, Polarity.OUT):
            if u.count(pol) > 1:
                raise LinearityViolation(name, pol, u.count(pol))
    return counts


def is_linear(p: Process | CanonicalProcess) -> bool:
    try:
        check_linear(p)
    except LinearityViolation:
        return False
    return True
