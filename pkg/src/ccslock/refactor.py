"""Disentangling detected processes by rewriting their prefixes.

Two rewrites are offered, both driven by the offending top-layer environment
reported by :func:`ccslock.analysis.analyze`:

``d1`` (prefix to parallel)
    A matching prefix is split off into parallel with its continuation.
``d2`` (pull output)
    Matching outputs are split off as in ``d1``, but a blocked input keeps
    its continuation and has its co-output pulled up beside it instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .analysis import DlMode, Detected, Env, Permission, analyze, env_to_json
from .core import INERT, Inert, Par, Prefix, Process, unparse
from .linearity import is_linear
from .oracle import DEFAULT_BUDGET, is_lock_free


class Strategy(enum.Enum):
    PREFIX_TO_PARALLEL = "d1"
    PULL_OUTPUT = "d2"


class NoLockDetected(Exception):
    pass


def disentangle_par(g: Env, p: Process) -> Process:
    if isinstance(p, Inert):
        return p
    if isinstance(p, Par):
        return Par(disentangle_par(g, p.left), disentangle_par(g, p.right))
    want = Permission.I if p.action.is_input else Permission.O
    if g.get(p.action.name) is want:
        # continuation left untouched
        return Par(Prefix(p.action, INERT), p.cont)
    return Prefix(p.action, disentangle_par(g, p.cont))


def disentangle_pull(g: Env, p: Process) -> Process:
    if isinstance(p, Inert):
        return p
    if isinstance(p, Par):
        return Par(disentangle_pull(g, p.left), disentangle_pull(g, p.right))
    perm = g.get(p.action.name)
    cont = disentangle_pull(g, p.cont)
    if p.action.is_input:
        if perm is Permission.I:
            return Par(Prefix(p.action, cont), Prefix(p.action.co, INERT))
        return Prefix(p.action, cont)
    if perm is Permission.O:
        return Par(Prefix(p.action, INERT), cont)
    if perm is Permission.I:
        return cont
    return Prefix(p.action, cont)


def disentangle(strategy: Strategy, g: Env, p: Process) -> Process:
    if strategy is Strategy.PREFIX_TO_PARALLEL:
        return disentangle_par(g, p)
    return disentangle_pull(g, p)


@dataclass
class RefactorResult:
    original: Process
    strategy: Strategy
    env_used: Env
    output: Process
    still_linear: bool
    output_lock_free: bool | None  # None when not verified
    residual_reports: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "env_used": env_to_json(self.env_used),
            "output": unparse(self.output),
            "still_linear": self.still_linear,
            "output_lock_free": self.output_lock_free,
            "residual_reports": [env_to_json(g) for g in self.residual_reports],
        }


def _apply(p: Process, strategy: Strategy, g: Env, mode: DlMode, verify: bool, budget: int):
    q = disentangle(strategy, g, p)
    linear = is_linear(q)
    residual = analyze(q, mode) if linear else None
    return RefactorResult(
        original=p,
        strategy=strategy,
        env_used=dict(g),
        output=q,
        still_linear=linear,
        output_lock_free=is_lock_free(q, budget) if verify else None,
        residual_reports=list(residual.reports) if isinstance(residual, Detected) else [],
    )


def refactor(
    p: Process,
    strategy: Strategy,
    mode: DlMode = "relaxed",
    verify: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> RefactorResult:
    """Detect, rewrite with the first reported environment, and re-verify."""
    verdict = analyze(p, mode)
    if not isinstance(verdict, Detected):
        raise NoLockDetected(unparse(p))
    return _apply(p, strategy, verdict.reports[0], mode, verify, budget)


def refactor_all(
    p: Process,
    strategy: Strategy,
    mode: DlMode = "relaxed",
    verify: bool = True,
    budget: int = DEFAULT_BUDGET,
    max_rounds: int = 32,
) -> list[RefactorResult]:
    """Repeat :func:`refactor` on its own output until nothing is detected.

    Each round re-analyses the previous output, so an environment is never
    applied to a term it was not computed from. Stops early if a round leaves
    the process unchanged or breaks linearity.
    """
    rounds = [refactor(p, strategy, mode, verify, budget)]
    while len(rounds) < max_rounds:
        last = rounds[-1]
        if not last.residual_reports or not last.still_linear or last.output == last.original:
            break
        rounds.append(_apply(last.output, strategy, last.residual_reports[0], mode, verify, budget))
    return rounds
