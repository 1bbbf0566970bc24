"""Command line front end: batch evaluation, REPL and trace export.

Exit codes: 0 normal form, 1 usage/parse/decode error, 2 step limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .church import (
    DecodeError, Environment, builtin_env, decode_bool, decode_nat,
    load_program, prelude_source,
)
from .parser import REF_RE, ParseError, parse_program, parse_term, pretty_print
from .reducer import DEFAULT_MAX_STEPS, NormalForm, Trace, trace
from .terms import Term, canonicalize

EXIT_OK, EXIT_ERROR, EXIT_STEP_LIMIT = 0, 1, 2
DECODERS = {"nat": decode_nat, "bool": decode_bool}


# -- rendering ------------------------------------------------------------------

@dataclass
class Style:
    sugar: bool = True
    canon: bool = False

    def show(self, t: Term) -> str:
        return pretty_print(canonicalize(t) if self.canon else t, sugar=self.sugar)


def format_trace_text(tr: Trace, style: Style = Style()) -> str:
    """One term per line, each reduct prefixed by an arrow."""
    lines = [style.show(tr.initial)]
    lines += ["→ " + style.show(s.after) for s in tr.steps]
    if not isinstance(tr.outcome, NormalForm):
        lines.append(f"… step limit {tr.outcome.limit} reached")
    return "\n".join(lines)


def trace_document(tr: Trace, style: Style = Style()) -> dict:
    steps = []
    for i, s in enumerate(tr.steps):
        steps.append({
            "index": i,
            "redex_path": [d.value for d in s.path],
            "substitution": {"var": s.target, "replacement": style.show(s.replacement)},
            "renames": [{"old": old, "new": new} for old, new in s.renames],
            "result": style.show(s.after),
        })
    if isinstance(tr.outcome, NormalForm):
        outcome = {"kind": "normal_form", "steps_used": tr.outcome.steps_used}
    else:
        outcome = {"kind": "step_limit", "limit": tr.outcome.limit}
    return {"version": "1", "initial": style.show(tr.initial), "steps": steps,
            "outcome": outcome}


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(tr: Trace, style: Style = Style()) -> str:
    lines = ["digraph trace {", "  rankdir=TB;", "  node [shape=box, fontname=\"monospace\"];"]
    for i, t in enumerate(tr.terms()):
        lines.append(f'  n{i} [label="{_dot_escape(style.show(t))}"];')
    for i, s in enumerate(tr.steps):
        label = f"[{style.show(s.replacement)}/{s.target}]"
        lines.append(f'  n{i} -> n{i + 1} [label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines)


# -- batch ------------------------------------------------------------------------

@dataclass
class Result:
    code: int
    out: list = field(default_factory=list)
    err: list = field(default_factory=list)


def evaluate_source(source: str, env: Environment, args) -> Result:
    style = Style(sugar=not args.no_sugar, canon=args.canon)
    res = Result(EXIT_OK)
    try:
        _, term = load_program(source, env)
    except ParseError as exc:
        return Result(EXIT_ERROR, err=[exc.render(source)])
    if term is None:
        return Result(EXIT_ERROR, err=["error: program has no expression to evaluate"])

    tr = trace(term, args.max_steps)
    outcome = tr.outcome
    if args.trace == "json":
        res.out.append(json.dumps(trace_document(tr, style), ensure_ascii=False, indent=2))
    elif args.trace == "dot":
        res.out.append(export_dot(tr, style))
    elif args.trace == "text":
        res.out.append(format_trace_text(tr, style))

    if not isinstance(outcome, NormalForm):
        if args.trace is None:
            res.out.append(style.show(outcome.last))
        res.err.append(f"step limit {outcome.limit} reached without a normal form")
        res.code = EXIT_STEP_LIMIT
        return res
    if args.trace is None:
        res.out.append(style.show(outcome.result))
    if args.decode and args.trace in (None, "text"):
        try:
            res.out.append(_format_value(DECODERS[args.decode](outcome.result, args.max_steps)))
        except DecodeError as exc:
            res.err.append(f"error: cannot decode as {args.decode}: {exc.reason.value}")
            res.code = EXIT_ERROR
    return res


def _format_value(value) -> str:
    return str(value).lower() if isinstance(value, bool) else str(value)


def _batch_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lambdacalc",
        description="Untyped lambda calculus interpreter (normal-order reduction). "
                    "Subcommands: 'repl', 'dump-prelude'.",
    )
    p.add_argument("file", nargs="?", help="program file (default: stdin)")
    p.add_argument("--expr", action="append", metavar="STR", help="evaluate STR; repeatable")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, metavar="N",
                   help=f"beta-step budget per expression (default: {DEFAULT_MAX_STEPS})")
    p.add_argument("--decode", choices=sorted(DECODERS), help="also print the decoded value")
    p.add_argument("--trace", choices=["text", "json", "dot"], help="emit the full reduction trace")
    p.add_argument("--no-prelude", action="store_true", help="start from an empty environment")
    p.add_argument("--canon", action="store_true",
                   help="rename binders to a, b, c, ... for stable output")
    p.add_argument("--no-sugar", action="store_true",
                   help="print nested abstractions without binder fusion")
    return p


def run_batch(argv, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _batch_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    if args.max_steps < 0:
        print("error: --max-steps must be >= 0", file=stderr)
        return EXIT_ERROR
    env = Environment() if args.no_prelude else builtin_env()

    if args.expr:
        if args.file:
            print("error: give either --expr or a file, not both", file=stderr)
            return EXIT_ERROR
        sources = args.expr
    elif args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                sources = [fh.read()]
        except OSError as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_ERROR
    else:
        sources = [stdin.read()]

    if len(sources) == 1:
        results = [evaluate_source(sources[0], env, args)]
    else:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda s: evaluate_source(s, env, args), sources))
    for r in results:
        for line in r.out:
            print(line, file=stdout)
        for line in r.err:
            print(line, file=stderr)
    codes = {r.code for r in results}
    if EXIT_ERROR in codes:
        return EXIT_ERROR
    return EXIT_STEP_LIMIT if EXIT_STEP_LIMIT in codes else EXIT_OK


# -- REPL ----------------------------------------------------------------------------

class CommandError(Exception):
    pass


@dataclass
class ReplState:
    env: Environment = field(default_factory=builtin_env)
    step_limit: int = DEFAULT_MAX_STEPS
    trace_mode: str = "off"  # off | text | json
    sugar: bool = True


HELP = """\
  E                 reduce E to normal form
  :let NAME = E     bind NAME (uppercase) to E
  :trace E          show every reduction step
  :steps K          set the step limit
  :decode nat E     reduce E and read it as a numeral
  :decode bool E    reduce E and read it as a boolean
  :tracing off|text|json
  :sugar on|off
  :load FILE        load let-definitions (and evaluate a final expression)
  :dump-prelude     print the builtin definitions
  :quit"""


class Repl:
    prompt = "λ> "

    def __init__(self, state: Optional[ReplState] = None):
        self.state = state or ReplState()
        self.prelude = builtin_env()
        self.done = False

    @property
    def style(self) -> Style:
        return Style(sugar=self.state.sugar)

    def parse(self, text: str) -> Term:
        try:
            return parse_term(text, self.state.env)
        except ParseError as exc:
            raise CommandError(exc.render(text)) from None

    def handle(self, line: str) -> str:
        """Run one input line; return the text to show."""
        line = line.strip()
        if not line or line.startswith("--"):
            return ""
        try:
            if line.startswith(":"):
                cmd, _, rest = line[1:].partition(" ")
                handler = getattr(self, "cmd_" + cmd.replace("-", "_"), None)
                if handler is None:
                    raise CommandError(f"unknown command :{cmd} (try :help)")
                return handler(rest.strip())
            return self.evaluate(self.parse(line))
        except CommandError as exc:
            return str(exc) if str(exc).startswith("error") else f"error: {exc}"
        except RecursionError:
            return "error: term too deep to process"

    def evaluate(self, term: Term) -> str:
        tr = trace(term, self.state.step_limit)
        if self.state.trace_mode == "text":
            return format_trace_text(tr, self.style)
        if self.state.trace_mode == "json":
            return json.dumps(trace_document(tr, self.style), ensure_ascii=False)
        if isinstance(tr.outcome, NormalForm):
            return self.style.show(tr.outcome.result)
        return (self.style.show(tr.outcome.last)
                + f"\n… step limit {tr.outcome.limit} reached")

    def define(self, name: str, term: Term) -> None:
        if not REF_RE.fullmatch(name) or name.isdigit():
            raise CommandError(f"{name!r} is not a definable name (use uppercase)")
        if name in self.prelude:
            raise CommandError(f"{name} is a prelude name and cannot be redefined")
        if term.free:
            raise CommandError(f"definition is not closed: free {', '.join(sorted(term.free))}")
        self.state.env = self.state.env.extend(name, term)

    def cmd_let(self, rest: str) -> str:
        name, eq, body = rest.partition("=")
        if not eq:
            raise CommandError("usage: :let NAME = E")
        name = name.strip()
        self.define(name, self.parse(body))
        return f"{name} defined"

    def cmd_trace(self, rest: str) -> str:
        return format_trace_text(trace(self.parse(rest), self.state.step_limit), self.style)

    def cmd_steps(self, rest: str) -> str:
        if not rest.isdigit():
            raise CommandError("usage: :steps K")
        self.state.step_limit = int(rest)
        return f"step limit {rest}"

    def cmd_decode(self, rest: str) -> str:
        kind, _, src = rest.partition(" ")
        if kind not in DECODERS or not src.strip():
            raise CommandError("usage: :decode nat|bool E")
        try:
            return _format_value(DECODERS[kind](self.parse(src), self.state.step_limit))
        except DecodeError as exc:
            raise CommandError(f"cannot decode as {kind}: {exc.reason.value}") from None

    def cmd_tracing(self, rest: str) -> str:
        if rest not in ("off", "text", "json"):
            raise CommandError("usage: :tracing off|text|json")
        self.state.trace_mode = rest
        return f"tracing {rest}"

    def cmd_sugar(self, rest: str) -> str:
        if rest not in ("on", "off"):
            raise CommandError("usage: :sugar on|off")
        self.state.sugar = rest == "on"
        return f"sugar {rest}"

    def cmd_load(self, rest: str) -> str:
        try:
            with open(rest, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CommandError(str(exc)) from None
        try:
            bindings, final = parse_program(text, self.state.env)
        except ParseError as exc:
            raise CommandError(exc.render(text)) from None
        for b in bindings:
            self.define(b.name, self.parse(b.source))
        out = [f"loaded {len(bindings)} definition(s)"]
        if final is not None:
            out.append(self.evaluate(self.parse(final)))
        return "\n".join(out)

    def cmd_dump_prelude(self, rest: str) -> str:
        return prelude_source().rstrip("\n")

    def cmd_help(self, rest: str) -> str:
        return HELP

    def cmd_quit(self, rest: str) -> str:
        self.done = True
        return ""

    def run(self, stdin=None, stdout=None) -> int:
        stdin = stdin or sys.stdin
        stdout = stdout or sys.stdout
        interactive = stdin.isatty()
        while not self.done:
            if interactive:
                try:
                    line = input(self.prompt)
                except EOFError:
                    break
            else:
                line = stdin.readline()
                if not line:
                    break
            out = self.handle(line)
            if out:
                print(out, file=stdout)
        return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "dump-prelude":
        sys.stdout.write(prelude_source())
        return EXIT_OK
    if argv and argv[0] == "repl":
        p = argparse.ArgumentParser(prog="lambdacalc repl")
        p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
        p.add_argument("--no-sugar", action="store_true")
        args = p.parse_args(argv[1:])
        return Repl(ReplState(step_limit=args.max_steps, sugar=not args.no_sugar)).run()
    return run_batch(argv)


if __name__ == "__main__":
    sys.exit(main())
