"""Compositional detection of potentially self-locking processes.

A process is summarised by a layered environment: one permission map per
prefix depth, merged across parallel components. Prefixing and parallel
composition each get a verdict operation that may collapse the summary to a
detection carrying the offending top-layer environment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Literal, Mapping

from .core import CanonicalProcess, Prefix, Process, canonical

DlMode = Literal["relaxed", "strict"]


class Permission(enum.Enum):
    I = "i"
    O = "o"
    IO = "io"

    @property
    def co(self) -> Permission:
        return {Permission.I: Permission.O, Permission.O: Permission.I}.get(self, self)

    def __le__(self, other: Permission) -> bool:
        return self is other or other is Permission.IO


class MergeConflict(ValueError):
    def __init__(self, name: str):
        super().__init__(f"conflicting permissions for {name!r}")
        self.name = name


Env = Mapping[str, Permission]
LayeredEnv = tuple  # tuple[Env, ...]; the empty tuple is ε


def perm_merge(p: Permission, q: Permission, name: str = "?") -> Permission:
    if {p, q} == {Permission.I, Permission.O}:
        return Permission.IO
    raise MergeConflict(name)


def env(**perms: str) -> dict[str, Permission]:
    """Shorthand: ``env(a="i", b="o")``."""
    return {k: Permission(v) for k, v in perms.items()}


def env_merge(g1: Env, g2: Env) -> dict[str, Permission]:
    merged = dict(g1)
    for name, perm in g2.items():
        merged[name] = perm_merge(merged[name], perm, name) if name in merged else perm
    return merged


def env_complement(g: Env) -> dict[str, Permission]:
    return {name: perm.co for name, perm in g.items()}


def env_is_deadlock(g: Env, mode: DlMode = "relaxed") -> bool:
    cod = set(g.values())
    if mode == "strict":
        return cod == {Permission.I, Permission.O}
    return bool(cod) and Permission.IO not in cod


def env_is_complete(g: Env) -> bool:
    return bool(g) and set(g.values()) == {Permission.IO}


def env_subset(g1: Env, g2: Env) -> bool:
    return all(name in g2 and perm <= g2[name] for name, perm in g1.items())


def lenv_merge(h1: LayeredEnv, h2: LayeredEnv) -> LayeredEnv:
    if len(h1) < len(h2):
        h1, h2 = h2, h1
    return tuple(
        env_merge(g, h2[i]) if i < len(h2) else dict(g) for i, g in enumerate(h1)
    )


def lenv_flatten(h: LayeredEnv) -> dict[str, Permission]:
    flat: dict[str, Permission] = {}
    for g in h:
        flat = env_merge(flat, g)
    return flat


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Layers:
    layers: LayeredEnv = ()


@dataclass(frozen=True)
class Detected:
    reports: tuple  # tuple[Env, ...], never empty


Verdict = Layers | Detected


def _self_locking(top: Env, below: LayeredEnv, mode: DlMode) -> bool:
    return env_is_deadlock(top, mode) and env_subset(env_complement(top), lenv_flatten(below))


def verdict_prefix(g: Env, v: Verdict, mode: DlMode = "relaxed") -> Verdict:
    if isinstance(v, Detected):
        return v
    if _self_locking(g, v.layers, mode):
        return Detected((dict(g),))
    return Layers((dict(g),) + v.layers)


def verdict_merge(v1: Verdict, v2: Verdict, mode: DlMode = "relaxed") -> Verdict:
    if isinstance(v1, Detected) or isinstance(v2, Detected):
        reports = ()
        for v in (v1, v2):
            if isinstance(v, Detected):
                reports += v.reports
        return Detected(reports)
    h1, h2 = v1.layers, v2.layers
    if h1 and h2:
        top = env_merge(h1[0], h2[0])
        if _self_locking(top, lenv_merge(h1[1:], h2[1:]), mode):
            return Detected((top,))
        if env_is_complete(top):
            # every top action meets its partner; look again one layer down
            return verdict_merge(Layers(h1[1:]), Layers(h2[1:]), mode)
    return Layers(lenv_merge(h1, h2))


def analyze(p: Process | CanonicalProcess, mode: DlMode = "relaxed") -> Verdict:
    """Run the detector on ``canonical(p)``.

    Parallel components are folded left to right in canonical order. The
    input is assumed linear; a :class:`MergeConflict` means it was not.
    """
    verdict: Verdict = Layers()
    for c in canonical(p).components:
        verdict = verdict_merge(verdict, _analyze_component(c, mode), mode)
    return verdict


def _analyze_component(c: Prefix, mode: DlMode) -> Verdict:
    perm = Permission.I if c.action.is_input else Permission.O
    return verdict_prefix({c.action.name: perm}, analyze(c.cont, mode), mode)


def layering(p: Process | CanonicalProcess) -> LayeredEnv:
    """The layered environment of ``p`` with every detection check skipped."""
    h: LayeredEnv = ()
    for c in canonical(p).components:
        perm = Permission.I if c.action.is_input else Permission.O
        h = lenv_merge(h, ({c.action.name: perm},) + layering(c.cont))
    return h


# -- rendering ----------------------------------------------------------------


def env_to_json(g: Env) -> dict[str, str]:
    return {name: g[name].value for name in sorted(g)}


def env_str(g: Env) -> str:
    return "(" + ",".join(f"{n}:{g[n].value}" for n in sorted(g)) + ")"


def lenv_str(h: LayeredEnv) -> str:
    return "; ".join([env_str(g) for g in h] + ["ε"])


def verdict_to_json(v: Verdict) -> dict:
    if isinstance(v, Detected):
        return {"verdict": "locked", "reports": [env_to_json(g) for g in v.reports]}
    return {"verdict": "no-detection", "layers": [env_to_json(g) for g in v.layers]}
