"""Process terms of finite linear CCS: AST, parser, printer, canonical form.

Concrete syntax::

    proc   ::= "0" | act "." proc | proc "|" proc | "(" proc ")"
    act    ::= ident | "~" ident

``~a`` is the co-name of ``a``. Prefix binds tighter than ``|``, ``|`` groups
to the right, and ``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class Polarity(enum.Enum):
    IN = "in"
    OUT = "out"

    @property
    def co(self) -> Polarity:
        return Polarity.OUT if self is Polarity.IN else Polarity.IN


@dataclass(frozen=True)
class Action:
    name: str
    polarity: Polarity

    def __post_init__(self):
        if not IDENT_RE.fullmatch(self.name):
            raise ValueError(f"invalid name {self.name!r}")

    @property
    def co(self) -> Action:
        return Action(self.name, self.polarity.co)

    @property
    def is_input(self) -> bool:
        return self.polarity is Polarity.IN

    def __str__(self) -> str:
        return self.name if self.is_input else "~" + self.name


def inp(name: str) -> Action:
    return Action(name, Polarity.IN)


def out(name: str) -> Action:
    return Action(name, Polarity.OUT)


@dataclass(frozen=True)
class Inert:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Prefix:
    action: Action
    cont: Process

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True)
class Par:
    left: Process
    right: Process

    def __str__(self) -> str:
        return unparse(self)


Process = Union[Inert, Prefix, Par]

INERT = Inert()


def par(*procs: Process) -> Process:
    """Right-nested parallel composition; ``par()`` is the inert process."""
    if not procs:
        return INERT
    result = procs[-1]
    for p in reversed(procs[:-1]):
        result = Par(p, result)
    return result


def prefix(actions: Iterable[Action], cont: Process = INERT) -> Process:
    """Build ``α1.α2.….cont``."""
    actions = list(actions)
    for a in reversed(actions):
        cont = Prefix(a, cont)
    return cont


# -- printing ---------------------------------------------------------------


def unparse(p: Process) -> str:
    """Render ``p`` so that ``parse(unparse(p)) == p``."""
    if isinstance(p, Inert):
        return "0"
    if isinstance(p, Prefix):
        cont = unparse(p.cont)
        if isinstance(p.cont, Par):
            cont = f"({cont})"
        return f"{p.action}.{cont}"
    left = unparse(p.left)
    if isinstance(p.left, Par):
        left = f"({left})"
    return f"{left} | {unparse(p.right)}"


# -- parsing ----------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # one of: ident zero tilde dot bar lparen rparen eof
    text: str
    line: int
    col: int


_PUNCT = {"~": "tilde", ".": "dot", "|": "bar", "(": "lparen", ")": "rparen"}


def tokenize(text: str, line_offset: int = 0) -> Iterator[Token]:
    line, col = 1 + line_offset, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch.isspace():
            i += 1
            col += 1
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            yield Token(_PUNCT[ch], ch, line, col)
            i += 1
            col += 1
        elif ch == "0":
            yield Token("zero", ch, line, col)
            i += 1
            col += 1
        else:
            m = IDENT_RE.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            yield Token("ident", m.group(), line, col)
            i = m.end()
            col += len(m.group())
    yield Token("eof", "", line, col)


def _describe(tok: Token) -> str:
    return repr(tok.text) if tok.text else "end of input"


class _Parser:
    def __init__(self, text: str, line_offset: int):
        self.tokens = list(tokenize(text, line_offset))
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def expect(self, kind: str, what: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {_describe(tok)}", tok.line, tok.col)
        self.pos += 1
        return tok

    def proc(self) -> Process:
        left = self.term()
        if self.tok.kind == "bar":
            self.pos += 1
            return Par(left, self.proc())
        return left

    def term(self) -> Process:
        tok = self.tok
        if tok.kind == "zero":
            self.pos += 1
            return INERT
        if tok.kind == "lparen":
            self.pos += 1
            p = self.proc()
            self.expect("rparen", "')'")
            return p
        if tok.kind in ("tilde", "ident"):
            polarity = Polarity.IN
            if tok.kind == "tilde":
                self.pos += 1
                polarity = Polarity.OUT
            name = self.expect("ident", "a name").text
            self.expect("dot", "'.'")
            return Prefix(Action(name, polarity), self.term())
        raise ParseError(f"expected a process, found {_describe(tok)}", tok.line, tok.col)


def parse(text: str, line_offset: int = 0) -> Process:
    """Parse one process; ``line_offset`` shifts reported line numbers."""
    parser = _Parser(text, line_offset)
    p = parser.proc()
    parser.expect("eof", "end of input")
    return p


def locate_actions(text: str) -> dict[Action, list[tuple[int, int]]]:
    """Map each action occurring in ``text`` to its (line, col) positions."""
    found: dict[Action, list[tuple[int, int]]] = {}
    tokens = list(tokenize(text))
    for i, tok in enumerate(tokens):
        if tok.kind != "ident":
            continue
        if i > 0 and tokens[i - 1].kind == "tilde":
            start = tokens[i - 1]
            act = Action(tok.text, Polarity.OUT)
        else:
            start = tok
            act = Action(tok.text, Polarity.IN)
        found.setdefault(act, []).append((start.line, start.col))
    return found


# -- structural congruence --------------------------------------------------


@dataclass(frozen=True)
class CanonicalProcess:
    """A process modulo ``P | 0 = P``, commutativity and associativity of ``|``.

    ``components`` holds the top-level prefixes, each with a canonical
    continuation, sorted by printed form. The empty tuple is the inert process.
    """

    components: tuple[Prefix, ...] = ()

    def __str__(self) -> str:
        return unparse(self.to_process())

    def __len__(self) -> int:
        return len(self.components)

    def to_process(self) -> Process:
        return par(*self.components)

    @classmethod
    def of(cls, components: Iterable[Prefix]) -> CanonicalProcess:
        return cls(tuple(sorted(components, key=unparse)))


def _flatten(p: Process) -> Iterator[Prefix]:
    if isinstance(p, Par):
        yield from _flatten(p.left)
        yield from _flatten(p.right)
    elif isinstance(p, Prefix):
        yield Prefix(p.action, canonical(p.cont).to_process())


def canonical(p: Process | CanonicalProcess) -> CanonicalProcess:
    if isinstance(p, CanonicalProcess):
        return p
    return CanonicalProcess.of(_flatten(p))


def struct_eq(p: Process, q: Process) -> bool:
    return canonical(p) == canonical(q)


# -- name inventory ---------------------------------------------------------


def actions(p: Process | CanonicalProcess) -> Iterator[Action]:
    """Every prefix action of ``p``, guarded or not, in depth-first order."""
    if isinstance(p, CanonicalProcess):
        for c in p.components:
            yield from actions(c)
    elif isinstance(p, Prefix):
        yield p.action
        yield from actions(p.cont)
    elif isinstance(p, Par):
        yield from actions(p.left)
        yield from actions(p.right)


def names(p: Process | CanonicalProcess) -> frozenset[str]:
    return frozenset(a.name for a in actions(p))


def size(p: Process | CanonicalProcess) -> int:
    """Number of prefixes in ``p``."""
    return sum(1 for _ in actions(p))
