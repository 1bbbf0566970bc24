"""Church encodings: the builtin environment and value codecs."""
from __future__ import annotations

import enum
from functools import lru_cache
from importlib import resources
from typing import Iterator, Mapping, Optional, Sequence

from .parser import DuplicateDefinitionError, parse_program, parse_term
from .reducer import DEFAULT_MAX_STEPS, NormalForm, normalize
from .terms import Abs, App, Term, Var, fresh_name


class Environment(Mapping):
    """Ordered, immutable name -> closed term table."""

    def __init__(self, bindings=()):
        self._bindings = dict(bindings)
        for name, term in self._bindings.items():
            if term.free:
                raise ValueError(f"{name} is not closed: free {sorted(term.free)}")

    def __getitem__(self, name: str) -> Term:
        return self._bindings[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __repr__(self):
        return f"Environment({list(self._bindings)})"

    def extend(self, name: str, term: Term) -> "Environment":
        return Environment({**self._bindings, name: term})


class DecodeFailure(enum.Enum):
    NOT_NUMERAL_SHAPE = "not_numeral_shape"
    NOT_BOOL_SHAPE = "not_bool_shape"
    STEP_LIMIT = "step_limit"


class DecodeError(Exception):
    def __init__(self, reason: DecodeFailure, term: Optional[Term] = None):
        super().__init__(reason.value)
        self.reason = reason
        self.term = term


def prelude_source() -> str:
    return resources.files(__package__).joinpath("prelude.lc").read_text(encoding="utf-8")


def load_program(text: str, env: Optional[Mapping[str, Term]] = None):
    """Elaborate a program against ``env``.

    Returns ``(new_env, final_term)``; ``final_term`` is None when the
    program only has definitions.  Names already in ``env`` cannot be rebound.
    """
    env = env if isinstance(env, Environment) else Environment(env or {})
    bindings, final = parse_program(text, env)
    for b in bindings:
        if b.name in env:
            raise DuplicateDefinitionError(b.name, b.span)
        env = env.extend(b.name, parse_term(b.source, env))
    return env, (parse_term(final, env) if final is not None else None)


@lru_cache(maxsize=1)
def builtin_env() -> Environment:
    return load_program(prelude_source())[0]


def church_nat(n: int) -> Term:
    if n < 0:
        raise ValueError("Church numerals are natural numbers")
    body: Term = Var("z")
    for _ in range(n):
        body = App(Var("s"), body)
    return Abs("s", Abs("z", body))


def church_bool(b: bool) -> Term:
    return builtin_env()["T" if b else "F"]


def church_list(items: Sequence[Term]) -> Term:
    env = builtin_env()
    out = env["NIL"]
    for item in reversed(items):
        out = App(App(env["CONS"], item), out)
    return out


def _apply_to_fresh(t: Term, bases: str, max_steps: int):
    avoid = set(t.free)
    names = []
    for base in bases:
        name = fresh_name(base, avoid)
        avoid.add(name)
        names.append(name)
    probe = t
    for name in names:
        probe = App(probe, Var(name))
    outcome = normalize(probe, max_steps)
    if not isinstance(outcome, NormalForm):
        raise DecodeError(DecodeFailure.STEP_LIMIT, outcome.last)
    return outcome.result, names


def decode_nat(t: Term, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """Count how often ``t`` applies its first argument to its second.

    Decoding is extensional: anything that behaves like a numeral decodes.
    """
    result, (s, z) = _apply_to_fresh(t, "sz", max_steps)
    n = 0
    node = result
    while isinstance(node, App) and node.func == Var(s):
        n += 1
        node = node.arg
    if node != Var(z):
        raise DecodeError(DecodeFailure.NOT_NUMERAL_SHAPE, result)
    return n


def decode_bool(t: Term, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    result, (p, q) = _apply_to_fresh(t, "pq", max_steps)
    if result == Var(p):
        return True
    if result == Var(q):
        return False
    raise DecodeError(DecodeFailure.NOT_BOOL_SHAPE, result)


def decode_pair(t: Term, max_steps: int = DEFAULT_MAX_STEPS):
    env = builtin_env()
    parts = []
    for selector in (env["T"], env["F"]):
        outcome = normalize(App(t, selector), max_steps)
        if not isinstance(outcome, NormalForm):
            raise DecodeError(DecodeFailure.STEP_LIMIT, outcome.last)
        parts.append(outcome.result)
    return tuple(parts)
