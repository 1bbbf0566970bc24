import math

import pytest

from lambdacalc.church import (
    DecodeError, DecodeFailure, Environment, builtin_env, church_bool,
    church_list, church_nat, decode_bool, decode_nat, decode_pair,
    load_program, prelude_source,
)
from lambdacalc.parser import DuplicateDefinitionError, parse_term, pretty_print
from lambdacalc.reducer import normalize, trace
from lambdacalc.terms import App, Var, alpha_eq, apps

ENV = builtin_env()


def p(text):
    return parse_term(text, ENV)


def ap(name, *args):
    return apps(ENV[name], *args)


def test_builtin_lookups():
    assert ENV["I"] == parse_term("λx.x")
    assert ENV["0"] == parse_term("λsz.z")
    assert ENV["Y"] == parse_term("(λy.(λx.y(xx))(λx.y(xx)))")
    assert ENV["S"] == parse_term("λnab.a(nab)")


def test_builtins_closed_and_complete():
    expected = ("I 0 1 2 3 S ADD MUL T F AND OR NOT Z PAIR FST SND PHI P GEQ E "
                "GT LT Y SUM FACT NIL CONS ISNIL HEAD LEN").split()
    assert list(ENV) == expected
    for name, term in ENV.items():
        assert term.free == frozenset(), name


def test_builtin_env_is_deterministic():
    builtin_env.cache_clear()
    again = builtin_env()
    assert list(again) == list(ENV)
    assert all(again[k] == ENV[k] for k in ENV)


def test_environment_rejects_open_terms():
    with pytest.raises(ValueError):
        Environment({"BAD": Var("x")})


def test_load_program_rejects_rebinding_env_name():
    with pytest.raises(DuplicateDefinitionError):
        load_program("let T = λxy.y;", ENV)


def test_prelude_source_parses_to_builtins():
    env, final = load_program(prelude_source())
    assert final is None
    assert list(env) == list(ENV)


# -- numerals --------------------------------------------------------------------

def test_church_nat_shapes():
    assert church_nat(0) == parse_term("λsz.z")
    assert church_nat(3) == parse_term("λsz.s(s(s z))")
    assert church_nat(5) == parse_term("λsz.s(s(s(s(s z))))")
    assert decode_nat(church_nat(5)) == 5


def test_church_nat_rejects_negative():
    with pytest.raises(ValueError):
        church_nat(-1)


def test_decode_nat_examples():
    assert decode_nat(parse_term("λsz.z")) == 0
    assert decode_nat(parse_term("λab.a(ab)")) == 2


def test_decode_nat_is_extensional():
    assert decode_nat(ENV["I"]) == 1


def test_decode_nat_rejects_boolean():
    # by hand: T s z -> (λy.s) z -> s, a bare s with no z at the end
    assert normalize(apps(ENV["T"], Var("s"), Var("z"))).result == Var("s")
    with pytest.raises(DecodeError) as err:
        decode_nat(ENV["T"])
    assert err.value.reason is DecodeFailure.NOT_NUMERAL_SHAPE


def test_decode_nat_avoids_free_names_of_term():
    # the probe names must not collide with s and z free in the term
    t = parse_term("λfx.s")
    with pytest.raises(DecodeError):
        decode_nat(t)
    assert decode_nat(parse_term("(λq.λfx.f x) s")) == 1


def test_decode_step_limit():
    with pytest.raises(DecodeError) as err:
        decode_nat(p("Y I"), 50)
    assert err.value.reason is DecodeFailure.STEP_LIMIT


@pytest.mark.parametrize("n", range(0, 65))
def test_nat_roundtrip(n):
    assert decode_nat(church_nat(n)) == n


@pytest.mark.parametrize("n", range(0, 17))
def test_successor(n):
    assert decode_nat(normalize(ap("S", church_nat(n))).result) == n + 1


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("n", range(7))
def test_addition(m, n):
    assert decode_nat(ap("ADD", church_nat(m), church_nat(n))) == m + n
    assert decode_nat(apps(church_nat(m), ENV["S"], church_nat(n))) == m + n


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", range(6))
def test_multiplication(m, n):
    assert decode_nat(ap("MUL", church_nat(m), church_nat(n))) == m * n


def test_three_times_three_intermediate_form():
    # two contractions turn MUL 3 3 into λa.3(3a)
    tr = trace(p("MUL 3 3"))
    assert alpha_eq(tr.steps[1].after, p("λa.3(3a)"))
    assert decode_nat(tr.outcome.result) == 9


# -- booleans -----------------------------------------------------------------------

def test_decode_bool_examples():
    assert decode_bool(ENV["T"]) is True
    assert decode_bool(ENV["F"]) is False
    assert decode_bool(p("Z 0")) is True


def test_decode_bool_rejects_numeral():
    with pytest.raises(DecodeError) as err:
        decode_bool(church_nat(2))
    assert err.value.reason is DecodeFailure.NOT_BOOL_SHAPE


BOOLS = [False, True]


@pytest.mark.parametrize("a", BOOLS)
@pytest.mark.parametrize("b", BOOLS)
def test_and_or(a, b):
    assert decode_bool(ap("AND", church_bool(a), church_bool(b))) == (a and b)
    assert decode_bool(ap("OR", church_bool(a), church_bool(b))) == (a or b)


@pytest.mark.parametrize("a", BOOLS)
def test_not(a):
    assert decode_bool(ap("NOT", church_bool(a))) == (not a)


@pytest.mark.parametrize("n", range(7))
def test_zero_test(n):
    assert decode_bool(ap("Z", church_nat(n))) == (n == 0)


def test_false_applied_to_anything_is_identity():
    assert alpha_eq(normalize(App(ENV["F"], Var("a"))).result, ENV["I"])


# -- pairs and predecessor --------------------------------------------------------------

def test_decode_pair_examples():
    assert decode_pair(ap("PAIR", Var("a"), Var("b"))) == (Var("a"), Var("b"))
    first, second = decode_pair(ap("PAIR", ENV["0"], ENV["0"]))
    assert alpha_eq(first, ENV["0"]) and alpha_eq(second, ENV["0"])
    assert decode_pair(ENV["I"]) == (ENV["T"], ENV["F"])


def test_phi_steps_pair():
    pair = ap("PAIR", church_nat(3), church_nat(2))
    first, second = decode_pair(ap("PHI", pair))
    assert decode_nat(first) == 4 and decode_nat(second) == 3


@pytest.mark.parametrize("n", range(7))
def test_predecessor(n):
    assert decode_nat(ap("P", church_nat(n))) == max(n - 1, 0)


@pytest.mark.parametrize("m", range(5))
@pytest.mark.parametrize("n", range(5))
def test_comparisons(m, n):
    a, b = church_nat(m), church_nat(n)
    assert decode_bool(ap("GEQ", a, b)) == (m >= n)
    assert decode_bool(ap("E", a, b)) == (m == n)
    assert decode_bool(ap("GT", a, b)) == (m > n)
    assert decode_bool(ap("LT", a, b)) == (m < n)


# -- recursion -----------------------------------------------------------------------

@pytest.mark.parametrize("n", range(5))
def test_sum(n):
    assert decode_nat(ap("SUM", church_nat(n))) == n * (n + 1) // 2


@pytest.mark.parametrize("n", range(5))
def test_factorial(n):
    assert decode_nat(ap("FACT", church_nat(n))) == math.factorial(n)


def test_y_unrolls_once():
    body = parse_term("λrn.Z n 0 (n S (r(P n)))", ENV)
    tr = trace(App(ENV["Y"], body), 5)
    # Y R -> W W -> R (W W), with W W the first reduct
    assert alpha_eq(tr.steps[1].after, App(body, tr.steps[0].after))


# -- lists ---------------------------------------------------------------------------------

def test_empty_list():
    assert church_list([]) == ENV["NIL"]
    assert decode_bool(ap("ISNIL", church_list([]))) is True
    assert decode_nat(ap("LEN", church_list([]))) == 0


def test_singleton_list():
    one = church_list([church_nat(1)])
    assert one == ap("CONS", church_nat(1), ENV["NIL"])
    assert decode_nat(ap("HEAD", one)) == 1
    assert decode_bool(ap("ISNIL", one)) is False


@pytest.mark.parametrize("items", [[1], [1, 2], [3, 0, 2], [4, 4, 1, 0]])
def test_list_length_and_head(items):
    lst = church_list([church_nat(i) for i in items])
    assert decode_nat(ap("LEN", lst)) == len(items)
    assert decode_nat(ap("HEAD", lst)) == items[0]


def test_builtins_print_and_reparse():
    for name, term in ENV.items():
        assert parse_term(pretty_print(term)) == term, name
