"""Test-only oracles and generators, kept independent of the code under test."""
from hypothesis import strategies as st

from lambdacalc.reducer import NormalForm, StepLimit, contract, Dir
from lambdacalc.terms import Abs, App, BAbs, BApp, BVar, FVar, Var

NAMES = ["x", "y", "z", "a", "x1", "y'"]


def occurrences(t, bound=()):
    """Yield (name, is_bound) for every variable occurrence, by direct walk."""
    if isinstance(t, Var):
        yield t.name, t.name in bound
    elif isinstance(t, Abs):
        yield from occurrences(t.body, bound + (t.binder,))
    else:
        yield from occurrences(t.func, bound)
        yield from occurrences(t.arg, bound)


def db_replace_free(d, name, replacement):
    """Substitute a de Bruijn image for FVar(name).

    Free variables stay named in the image, so a closed-index replacement
    needs no shifting: this is substitution with capture ruled out by
    construction.
    """
    if isinstance(d, FVar):
        return replacement if d.name == name else d
    if isinstance(d, BVar):
        return d
    if isinstance(d, BAbs):
        return BAbs(db_replace_free(d.body, name, replacement))
    return BApp(db_replace_free(d.func, name, replacement),
                db_replace_free(d.arg, name, replacement))


def _innermost_redex(t, path=()):
    # leftmost-innermost: look inside both children before taking this node
    if isinstance(t, App):
        found = _innermost_redex(t.func, path + (Dir.FUNC,))
        if found is not None:
            return found
        found = _innermost_redex(t.arg, path + (Dir.ARG,))
        if found is not None:
            return found
        if isinstance(t.func, Abs):
            return path
        return None
    if isinstance(t, Abs):
        return _innermost_redex(t.body, path + (Dir.BODY,))
    return None


def normalize_applicative(t, max_steps):
    used = 0
    while True:
        path = _innermost_redex(t)
        if path is None:
            return NormalForm(t, used)
        if used == max_steps:
            return StepLimit(t, max_steps)
        t = contract(t, path).after
        used += 1


@st.composite
def terms(draw, max_size=12, names=NAMES):
    """Random terms of at most ``max_size`` nodes."""
    name = st.sampled_from(names)

    def sized(n):
        if n == 1:
            return Var(draw(name))
        if n == 2 or draw(st.booleans()):
            return Abs(draw(name), sized(n - 1))
        k = draw(st.integers(1, n - 2))
        return App(sized(k), sized(n - 1 - k))

    return sized(draw(st.integers(1, max_size)))


def random_term(rng, size, names=NAMES):
    """Same distribution shape as ``terms`` but from a plain ``random.Random``."""
    if size == 1:
        return Var(rng.choice(names))
    if size == 2 or rng.random() < 0.5:
        return Abs(rng.choice(names), random_term(rng, size - 1, names))
    k = rng.randint(1, size - 2)
    return App(random_term(rng, k, names), random_term(rng, size - 1 - k, names))


def rename_binders(t, rng, fresh=("p", "q", "r", "u", "v", "w")):
    """A random alpha-variant: each binder renamed to an unused name."""
    used = set()

    def collect(n):
        if isinstance(n, Var):
            used.add(n.name)
        elif isinstance(n, Abs):
            used.add(n.binder)
            collect(n.body)
        else:
            collect(n.func)
            collect(n.arg)

    collect(t)
    pool = [f"{c}{i}" for i in range(1, 50) for c in fresh if f"{c}{i}" not in used]
    rng.shuffle(pool)
    it = iter(pool)

    def go(n, mapping):
        if isinstance(n, Var):
            return Var(mapping.get(n.name, n.name))
        if isinstance(n, Abs):
            new = next(it)
            return Abs(new, go(n.body, {**mapping, n.binder: new}))
        return App(go(n.func, mapping), go(n.arg, mapping))

    return go(t, {})
