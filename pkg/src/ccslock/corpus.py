"""Seeded generation of linear processes for property tests and measurement.

Tokens (actions) are drawn first, each name contributing at most one input
and one output, then split recursively into parallel branches and prefix
chains. Linearity therefore holds by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Iterator

from .core import INERT, Action, Inert, Par, Polarity, Prefix, Process, names, size

NAME_POOL = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    names: int = 3
    max_depth: int = 4
    max_width: int = 3
    force_complete: bool = False


def capacity(depth: int, width: int) -> int:
    """Most prefixes a tree of the given nesting depth and branching can hold."""
    cap = 0
    for _ in range(depth):
        cap = width * (1 + cap)
    return cap


def _pick_tokens(rng: random.Random, params: GenParams) -> list[Action]:
    tokens: list[Action] = []
    for name in NAME_POOL[: params.names]:
        if params.force_complete:
            if rng.random() < 0.85:
                tokens += [Action(name, Polarity.IN), Action(name, Polarity.OUT)]
        else:
            for pol in (Polarity.IN, Polarity.OUT):
                if rng.random() < 0.7:
                    tokens.append(Action(name, pol))
    cap = capacity(params.max_depth, params.max_width)
    while len(tokens) > cap:
        # drop a whole name so completeness survives
        victim = rng.choice(tokens).name
        tokens = [t for t in tokens if t.name != victim]
    return tokens


def _group(rng: random.Random, branches: list[Process]) -> Process:
    """Combine branches in parallel under a random bracketing."""
    if not branches:
        return INERT
    if len(branches) == 1:
        return branches[0]
    k = rng.randrange(1, len(branches))
    return Par(_group(rng, branches[:k]), _group(rng, branches[k:]))


def _build(rng: random.Random, tokens: list[Action], depth: int, width: int) -> Process:
    if not tokens:
        return INERT
    rng.shuffle(tokens)
    per_branch = 1 + capacity(depth - 1, width)
    lo = -(-len(tokens) // per_branch)
    w = rng.randint(lo, min(width, len(tokens)))
    # sizes: each branch gets at least one token and at most per_branch
    sizes = [1] * w
    for _ in range(len(tokens) - w):
        open_ = [i for i, s in enumerate(sizes) if s < per_branch]
        sizes[rng.choice(open_)] += 1
    branches = []
    start = 0
    for s in sizes:
        head, *rest = tokens[start : start + s]
        start += s
        branches.append(Prefix(head, _build(rng, rest, depth - 1, width)))
    return _group(rng, branches)


def gen_linear(params: GenParams) -> Process:
    if params.names < 1:
        raise ValueError("names must be at least 1")
    if params.names > len(NAME_POOL):
        raise ValueError(f"names must be at most {len(NAME_POOL)}")
    if params.max_depth < 1 or params.max_width < 1:
        raise ValueError("max_depth and max_width must be at least 1")
    rng = random.Random(params.seed)
    tokens = _pick_tokens(rng, params)
    return _build(rng, tokens, params.max_depth, params.max_width)


def generate(params: GenParams, count: int) -> Iterator[Process]:
    """``count`` processes from consecutive seeds starting at ``params.seed``."""
    for i in range(count):
        yield gen_linear(replace(params, seed=params.seed + i))


# -- shrinking ------------------------------------------------------------------


def _drop_name(p: Process, name: str) -> Process:
    if isinstance(p, Inert):
        return p
    if isinstance(p, Par):
        return Par(_drop_name(p.left, name), _drop_name(p.right, name))
    cont = _drop_name(p.cont, name)
    return cont if p.action.name == name else Prefix(p.action, cont)


def _subterms(p: Process) -> Iterator[Process]:
    if isinstance(p, Par):
        yield p.left
        yield p.right
    elif isinstance(p, Prefix):
        yield p.cont
        yield from _subterms(p.cont)


def shrink(p: Process, failing: Callable[[Process], bool]) -> Process:
    """Greedily cut names and parallel branches while ``failing`` keeps holding."""
    changed = True
    while changed:
        changed = False
        candidates = [_drop_name(p, n) for n in sorted(names(p))]
        candidates += list(_subterms(p))
        for q in sorted(candidates, key=size):
            if size(q) < size(p) and failing(q):
                p, changed = q, True
                break
    return p
