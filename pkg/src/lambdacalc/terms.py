"""Lambda terms and name hygiene.

Terms are immutable named trees (``Var``, ``Abs``, ``App``).  A de Bruijn
image is derived only for alpha-equivalence checks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

NAME_RE = re.compile(r"[a-z][a-zA-Z0-9'_]*\Z")
_TRAILING_DIGITS = re.compile(r"\d+\Z")


def is_valid_name(text: str) -> bool:
    return bool(NAME_RE.match(text))


@dataclass(frozen=True)
class Var:
    name: str

    @cached_property
    def free(self) -> frozenset:
        return frozenset((self.name,))


@dataclass(frozen=True)
class Abs:
    binder: str
    body: "Term"

    @cached_property
    def free(self) -> frozenset:
        return self.body.free - {self.binder}


@dataclass(frozen=True)
class App:
    func: "Term"
    arg: "Term"

    @cached_property
    def free(self) -> frozenset:
        return self.func.free | self.arg.free


Term = Union[Var, Abs, App]


def lams(binders: str | Iterable[str], body: Term) -> Term:
    """Build nested abstractions, ``lams("sz", z)`` is ``λs.λz.z``."""
    for b in reversed(list(binders)):
        body = Abs(b, body)
    return body


def apps(head: Term, *args: Term) -> Term:
    """Left-associated application spine."""
    for a in args:
        head = App(head, a)
    return head


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, Abs):
        return 1 + size(t.body)
    return 1 + size(t.func) + size(t.arg)


# -- free / bound --------------------------------------------------------------

def free_vars(t: Term) -> frozenset:
    return t.free


def is_free(name: str, t: Term) -> bool:
    return name in t.free


def is_bound(name: str, t: Term) -> bool:
    """True if ``name`` is a binder anywhere in ``t``.

    A name counts as bound in ``λn.e`` whether or not ``e`` mentions it, as
    in the usual two-rule definition; it may be free elsewhere in ``t`` too.
    """
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Abs):
            if node.binder == name:
                return True
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.func)
            stack.append(node.arg)
    return False


def all_names(t: Term) -> set:
    """Every name occurring in ``t``, free, bound or as a binder."""
    out = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Abs):
            out.add(node.binder)
            stack.append(node.body)
        else:
            stack.append(node.func)
            stack.append(node.arg)
    return out


# -- fresh names -----------------------------------------------------------------

class NameSupply:
    """Stream of distinct names derived from ``base`` that avoid a set."""

    def __init__(self, base: str, avoid: Iterable[str] = ()):
        self.base = base
        self.avoid = set(avoid)

    def __iter__(self):
        return self

    def __next__(self) -> str:
        name = fresh_name(self.base, self.avoid)
        self.avoid.add(name)
        return name


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Return ``base`` (trailing digits stripped) or ``base1``, ``base2``, ...

    The first candidate not in ``avoid`` wins.
    """
    avoid = avoid if isinstance(avoid, (set, frozenset)) else set(avoid)
    stem = _TRAILING_DIGITS.sub("", base) or base
    if stem not in avoid:
        return stem
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


# -- substitution ------------------------------------------------------------------

def substitute(body: Term, target: str, replacement: Term) -> Term:
    """Capture-avoiding ``[replacement/target]body``."""
    return substitute_logged(body, target, replacement)[0]


def substitute_logged(body: Term, target: str, replacement: Term):
    """Like :func:`substitute`, also returning the binder renames performed.

    Renames are ``(old, new)`` pairs in the order they happened.
    """
    if isinstance(replacement, Var) and replacement.name == target:
        return body, []
    renames: list = []
    return _subst(body, target, replacement, replacement.free, renames), renames


def _subst(t, x, s, fv_s, renames):
    if x not in t.free:
        return t
    if isinstance(t, Var):
        # x is free in t, so t is exactly Var(x)
        return s
    if isinstance(t, App):
        return App(_subst(t.func, x, s, fv_s, renames),
                   _subst(t.arg, x, s, fv_s, renames))
    b, inner = t.binder, t.body
    if b in fv_s:
        avoid = fv_s | all_names(inner) | {x}
        new = fresh_name(b, avoid)
        renames.append((b, new))
        inner = _subst(inner, b, Var(new), frozenset((new,)), renames)
        b = new
    return Abs(b, _subst(inner, x, s, fv_s, renames))


# -- de Bruijn / alpha ------------------------------------------------------------

@dataclass(frozen=True)
class BVar:
    index: int


@dataclass(frozen=True)
class FVar:
    name: str


@dataclass(frozen=True)
class BAbs:
    body: "DeBruijnTerm"


@dataclass(frozen=True)
class BApp:
    func: "DeBruijnTerm"
    arg: "DeBruijnTerm"


DeBruijnTerm = Union[BVar, FVar, BAbs, BApp]


def to_debruijn(t: Term, _ctx: tuple = ()) -> DeBruijnTerm:
    # _ctx holds enclosing binders, innermost first
    if isinstance(t, Var):
        try:
            return BVar(_ctx.index(t.name))
        except ValueError:
            return FVar(t.name)
    if isinstance(t, Abs):
        return BAbs(to_debruijn(t.body, (t.binder,) + _ctx))
    return BApp(to_debruijn(t.func, _ctx), to_debruijn(t.arg, _ctx))


def alpha_eq(a: Term, b: Term) -> bool:
    return to_debruijn(a) == to_debruijn(b)


def canonical_names():
    """a, b, ..., z, a1, ..., z1, a2, ..."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    yield from letters
    n = 1
    while True:
        for c in letters:
            yield f"{c}{n}"
        n += 1


def canonicalize(t: Term) -> Term:
    """Rename binders to a, b, c, ... in binding (pre-)order.

    Names free in ``t`` are skipped, so the result is alpha-equivalent.
    """
    supply = (n for n in canonical_names() if n not in t.free)

    def go(node, mapping):
        if isinstance(node, Var):
            return Var(mapping.get(node.name, node.name))
        if isinstance(node, Abs):
            new = next(supply)
            return Abs(new, go(node.body, {**mapping, node.binder: new}))
        return App(go(node.func, mapping), go(node.arg, mapping))

    return go(t, {})
