"""Command-line front end.

Exit codes: 0 clean, 1 finding (lock detected / PSL / nothing to refactor),
2 parse or linearity error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .analysis import Detected, MergeConflict, analyze, env_str, env_to_json, lenv_str, verdict_to_json
from .core import Action, ParseError, Polarity, Process, canonical, locate_actions, parse, unparse
from .corpus import GenParams, generate
from .linearity import LinearityViolation, check_linear
from .oracle import DEFAULT_BUDGET, classify, is_psl
from .refactor import NoLockDetected, Strategy, refactor, refactor_all
from .semantics import BudgetExceeded, render_trace

EXIT_OK, EXIT_FOUND, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Source:
    path: str
    index: int
    text: str
    line_offset: int


def split_sources(path: str, text: str) -> list[Source]:
    """One process per blank-line separated chunk; comment-only chunks are skipped."""
    sources: list[Source] = []
    chunk: list[str] = []
    start = 0
    lines = text.splitlines()
    for i, line in enumerate(lines + [""]):
        if line.strip():
            if not chunk:
                start = i
            chunk.append(line)
            continue
        body = "\n".join(chunk)
        if chunk and any(ln.split("#", 1)[0].strip() for ln in chunk):
            sources.append(Source(path, len(sources), body, start))
        chunk = []
    return sources


def read_sources(files: list[str]) -> list[Source]:
    sources = []
    for f in files:
        text = sys.stdin.read() if f == "-" else Path(f).read_text(encoding="utf-8")
        sources.extend(split_sources(f, text))
    return sources


def load(src: Source) -> Process:
    """Parse and check linearity; raises ParseError or LinearityViolation."""
    p = parse(src.text, src.line_offset)
    check_linear(p)
    return p


def _base(src: Source) -> dict:
    return {"source": src.path, "index": src.index}


def _error(src: Source, exc: Exception) -> dict:
    kind = "parse" if isinstance(exc, ParseError) else "linearity"
    return {**_base(src), "linear": False if kind == "linearity" else None, "error": {"kind": kind, "message": str(exc)}}


def _emit(report: dict, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(human)


def _label(src: Source) -> str:
    return f"{src.path}#{src.index + 1}"


def _timing(t0: float) -> dict:
    return {"elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}


def _prefix_sites(src: Source, g) -> list[str]:
    sites = locate_actions(src.text)
    lines = []
    for name in sorted(g):
        perm = g[name].value
        pols = {"i": [Polarity.IN], "o": [Polarity.OUT], "io": [Polarity.IN, Polarity.OUT]}[perm]
        for pol in pols:
            act = Action(name, pol)
            where = ", ".join(f"{ln + src.line_offset}:{col}" for ln, col in sites.get(act, []))
            lines.append(f"    {name}:{perm}  prefix {act} at {where or '?'}")
    return lines


# -- subcommands ------------------------------------------------------------


def cmd_check(args) -> int:
    code = EXIT_OK
    for src in read_sources(args.files):
        t0 = time.perf_counter()
        try:
            p = load(src)
        except (ParseError, LinearityViolation) as exc:
            _emit({**_error(src, exc), "timing": _timing(t0)}, args.json, f"{_label(src)}: error: {exc}")
            code = EXIT_ERROR
            continue
        try:
            verdict = analyze(p, args.dl_mode)
        except MergeConflict as exc:  # pragma: no cover - excluded by the linearity check
            raise RuntimeError(f"internal error on linear input: {exc}") from exc
        report = {**_base(src), "process": str(canonical(p)), "linear": True,
                  "dl_mode": args.dl_mode, **verdict_to_json(verdict), "timing": _timing(t0)}
        if isinstance(verdict, Detected):
            lines = [f"{_label(src)}: potential self-lock"]
            for g in verdict.reports:
                lines.append(f"  offending environment {env_str(g)}")
                lines.extend(_prefix_sites(src, g))
            if code != EXIT_ERROR:
                code = EXIT_FOUND
        else:
            lines = [f"{_label(src)}: no lock detected", f"  layers {lenv_str(verdict.layers)}"]
        _emit(report, args.json, "\n".join(lines))
    return code


def cmd_oracle(args) -> int:
    found = errors = budget_hit = False
    for src in read_sources(args.files):
        t0 = time.perf_counter()
        try:
            p = load(src)
        except (ParseError, LinearityViolation) as exc:
            _emit({**_error(src, exc), "timing": _timing(t0)}, args.json, f"{_label(src)}: error: {exc}")
            errors = True
            continue
        try:
            cls = classify(p, args.budget)
            _, witness = is_psl(p, args.budget) if args.witness else (None, None)
        except BudgetExceeded as exc:
            _emit({**_base(src), "error": {"kind": "budget", "message": str(exc)}, "timing": _timing(t0)},
                  args.json, f"{_label(src)}: budget exceeded: {exc}")
            budget_hit = True
            continue
        found |= cls.potentially_self_locking
        report = {**_base(src), "process": str(canonical(p)), "classification": cls.to_json()}
        lines = [f"{_label(src)}: {canonical(p)}"]
        lines += [f"  {k}: {str(v).lower()}" for k, v in cls.to_json().items()]
        if args.witness:
            report["witness"] = witness.to_json() if witness else None
            if witness:
                lines.append("  witness trace:")
                lines += ["    " + ln for ln in render_trace(witness.trace).splitlines()] or ["    (empty)"]
                lines.append(f"  self-deadlocked group: {witness.locked_process}")
        report["timing"] = _timing(t0)
        _emit(report, args.json, "\n".join(lines))
    if errors:
        return EXIT_ERROR
    if budget_hit:
        return EXIT_BUDGET
    return EXIT_FOUND if found else EXIT_OK


def cmd_refactor(args) -> int:
    strategy = Strategy(args.strategy)
    errors = missing = False
    for src in read_sources(args.files):
        t0 = time.perf_counter()
        try:
            p = load(src)
        except (ParseError, LinearityViolation) as exc:
            _emit({**_error(src, exc), "timing": _timing(t0)}, args.json, f"{_label(src)}: error: {exc}")
            errors = True
            continue
        try:
            if args.all:
                rounds = refactor_all(p, strategy, args.dl_mode, args.verify, args.budget)
            else:
                rounds = [refactor(p, strategy, args.dl_mode, args.verify, args.budget)]
        except NoLockDetected:
            missing = True
            _emit({**_base(src), "process": unparse(p), "verdict": "no-detection", "timing": _timing(t0)},
                  args.json, f"{_label(src)}: no lock detected, nothing to refactor")
            continue
        except BudgetExceeded as exc:
            errors = True
            _emit({**_base(src), "error": {"kind": "budget", "message": str(exc)}, "timing": _timing(t0)},
                  args.json, f"{_label(src)}: budget exceeded: {exc}")
            continue
        final = rounds[-1]
        report = {**_base(src), "process": unparse(p), "output": unparse(final.output),
                  "rounds": [r.to_json() for r in rounds], "timing": _timing(t0)}
        verification = {"still_linear": final.still_linear, "output_lock_free": final.output_lock_free,
                        "residual_reports": [env_to_json(g) for g in final.residual_reports],
                        "envs_used": [env_to_json(r.env_used) for r in rounds]}
        _emit(report, args.json, unparse(final.output) + "\n" + json.dumps(verification, indent=2, sort_keys=True))
    if errors:
        return EXIT_ERROR
    return EXIT_FOUND if missing else EXIT_OK


def cmd_gen(args) -> int:
    params = GenParams(args.seed, args.names, args.depth, args.width, args.complete)
    try:
        procs = list(generate(params, args.count))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for i, p in enumerate(procs):
        if args.json:
            print(json.dumps({"seed": args.seed + i, "process": unparse(p)}, sort_keys=True))
        else:
            print(unparse(p))
    return EXIT_OK


def format_text(path: str, text: str) -> str:
    return "\n\n".join(str(canonical(parse(s.text, s.line_offset))) for s in split_sources(path, text)) + "\n"


def cmd_fmt(args) -> int:
    code = EXIT_OK
    for f in args.files:
        text = sys.stdin.read() if f == "-" else Path(f).read_text(encoding="utf-8")
        try:
            formatted = format_text(f, text)
        except ParseError as exc:
            print(f"{f}: error: {exc}", file=sys.stderr)
            code = EXIT_ERROR
            continue
        if args.write and f != "-":
            Path(f).write_text(formatted, encoding="utf-8")
        else:
            sys.stdout.write(formatted)
    return code


def cmd_report(args) -> int:
    from .report import corpus_report

    params = GenParams(args.seed, args.names, args.depth, args.width, args.complete)
    summary = corpus_report(params, args.count, Path(args.out), budget=args.budget)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_FOUND if summary["unsound"] else EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccslock", description="Detect and disentangle self-locking CCS processes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def files(p):
        p.add_argument("files", nargs="+", help="process files ('-' for stdin)")

    def dl_mode(p):
        p.add_argument("--dl-mode", choices=("relaxed", "strict"), default="relaxed",
                       help="environment deadlock test (default: relaxed)")

    def budget(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="max states plus sub-groups the oracle may examine")

    def gen_params(p, count):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--names", type=int, default=3)
        p.add_argument("--depth", type=int, default=4)
        p.add_argument("--width", type=int, default=3)
        p.add_argument("--complete", action="store_true", help="every used name gets both polarities")
        p.add_argument("--count", type=int, default=count)

    p = sub.add_parser("check", help="run the static detector")
    files(p)
    dl_mode(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="classify processes by exhaustive exploration")
    files(p)
    budget(p)
    p.add_argument("--witness", action="store_true", help="print a minimal lock witness")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("refactor", help="disentangle detected processes")
    files(p)
    dl_mode(p)
    budget(p)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], required=True)
    p.add_argument("--all", action="store_true", help="keep refactoring while locks are detected")
    p.add_argument("--verify", action="store_true", help="check lock-freedom of the output with the oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_refactor)

    p = sub.add_parser("gen", help="generate random linear processes")
    gen_params(p, 1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fmt", help="print processes in canonical form")
    files(p)
    p.add_argument("-w", "--write", action="store_true", help="rewrite files in place")
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("report", help="corpus statistics as CSV plus figures")
    gen_params(p, 500)
    budget(p)
    p.add_argument("--out", default="report", help="output directory")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
