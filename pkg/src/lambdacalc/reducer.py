"""Normal-order (leftmost-outermost) beta reduction with step budgets."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .terms import Abs, App, Term, substitute_logged

DEFAULT_MAX_STEPS = 10_000


class Dir(enum.Enum):
    FUNC = "func"
    ARG = "arg"
    BODY = "body"


RedexPath = tuple  # of Dir, root first


@dataclass(frozen=True)
class ReductionStep:
    before: Term
    after: Term
    path: RedexPath
    target: str
    replacement: Term
    renames: tuple = ()

    @property
    def substitution(self):
        return self.target, self.replacement


@dataclass(frozen=True)
class NormalForm:
    result: Term
    steps_used: int


@dataclass(frozen=True)
class StepLimit:
    last: Term
    limit: int


ReduceOutcome = Union[NormalForm, StepLimit]


@dataclass(frozen=True)
class Trace:
    initial: Term
    steps: tuple
    outcome: ReduceOutcome

    def terms(self):
        return [self.initial] + [s.after for s in self.steps]


def find_redex(t: Term) -> Optional[RedexPath]:
    """Path to the leftmost-outermost redex, or None for a normal form."""
    # preorder DFS, function side before argument side
    stack = [(t, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, App):
            if isinstance(node.func, Abs):
                return path
            stack.append((node.arg, path + (Dir.ARG,)))
            stack.append((node.func, path + (Dir.FUNC,)))
        elif isinstance(node, Abs):
            stack.append((node.body, path + (Dir.BODY,)))
    return None


def subterm(t: Term, path: RedexPath) -> Term:
    for d in path:
        t = t.func if d is Dir.FUNC else t.arg if d is Dir.ARG else t.body
    return t


def replace_at(t: Term, path: RedexPath, new: Term) -> Term:
    spine = []
    for d in path:
        spine.append((t, d))
        t = t.func if d is Dir.FUNC else t.arg if d is Dir.ARG else t.body
    for parent, d in reversed(spine):
        if d is Dir.FUNC:
            new = App(new, parent.arg)
        elif d is Dir.ARG:
            new = App(parent.func, new)
        else:
            new = Abs(parent.binder, new)
    return new


def contract(t: Term, path: RedexPath) -> ReductionStep:
    redex = subterm(t, path)
    if not (isinstance(redex, App) and isinstance(redex.func, Abs)):
        raise ValueError(f"no redex at {path}")
    fn, arg = redex.func, redex.arg
    reduced, renames = substitute_logged(fn.body, fn.binder, arg)
    return ReductionStep(t, replace_at(t, path, reduced), path, fn.binder, arg,
                         tuple(renames))


def step(t: Term) -> Optional[ReductionStep]:
    path = find_redex(t)
    return None if path is None else contract(t, path)


def iter_steps(t: Term) -> Iterator[ReductionStep]:
    while True:
        s = step(t)
        if s is None:
            return
        yield s
        t = s.after


def normalize(t: Term, max_steps: int = DEFAULT_MAX_STEPS) -> ReduceOutcome:
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    used = 0
    while True:
        path = find_redex(t)
        if path is None:
            return NormalForm(t, used)
        if used == max_steps:
            return StepLimit(t, max_steps)
        t = contract(t, path).after
        used += 1


def trace(t: Term, max_steps: int = DEFAULT_MAX_STEPS) -> Trace:
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    steps = []
    current = t
    for s in iter_steps(t):
        if len(steps) == max_steps:
            return Trace(t, tuple(steps), StepLimit(current, max_steps))
        steps.append(s)
        current = s.after
    return Trace(t, tuple(steps), NormalForm(current, len(steps)))
