import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mquasi import (
    App,
    ArityMismatch,
    CapacityExceeded,
    TermSyntaxError,
    UnboundVariable,
    Var,
    constant_map,
    eval_term,
    from_index,
    lifted_identity_check,
    load_fixture,
    parse_identity,
    parse_term,
    satisfies_identity,
)
from mquasi.core import all_operations
from mquasi.terms import CATALOG


def g(k):
    return from_index(2, 2, k - 1)


def terms(arity, max_var=4):
    leaves = st.integers(1, max_var).map(Var)
    return st.recursive(leaves, lambda kids: st.lists(kids, min_size=arity, max_size=arity).map(lambda c: App(tuple(c))), max_leaves=10)


def test_parse_ternary_example():
    t = parse_term("{{x1,x2,x3},{x4,x5,x6},{x7,x8,x9}}", 3)
    assert t == App(tuple(App((Var(3 * i + 1), Var(3 * i + 2), Var(3 * i + 3))) for i in range(3)))


def test_parse_simple_and_whitespace():
    assert parse_term("{x1,x2}", 2) == App((Var(1), Var(2)))
    assert parse_term("  { x1 ,\n x12 } ", 2) == App((Var(1), Var(12)))


@pytest.mark.parametrize("text,pos", [("{x1,x2", 6), ("x", 1), ("{x1 x2}", 4), ("x1 )", 3), ("y1", 0), ("", 0), ("x0", 1)])
def test_parse_syntax_errors(text, pos):
    with pytest.raises(TermSyntaxError) as exc:
        parse_term(text, 2)
    assert exc.value.position == pos


def test_parse_arity_mismatch():
    with pytest.raises(ArityMismatch):
        parse_term("{x1,x2}", 3)
    with pytest.raises(ArityMismatch):
        parse_term("x1", 1)


def test_parse_identity():
    lhs, rhs = parse_identity("{x1,x2} = {x2,x1}", 2)
    assert (str(lhs), str(rhs)) == ("{x1,x2}", "{x2,x1}")
    with pytest.raises(TermSyntaxError):
        parse_identity("{x1,x2}", 2)


@given(st.integers(2, 4).flatmap(lambda m: st.tuples(st.just(m), terms(m))))
@settings(max_examples=200)
def test_print_parse_roundtrip(case):
    m, t = case
    assert parse_term(str(t), m) == t


def test_eval_examples():
    g7 = g(7)
    assert eval_term(Var(1), g7, {1: 1}) == 1
    assert eval_term(parse_term("{x1,x2}", 2), g7, {1: 0, 2: 1}) == 1
    assert eval_term(parse_term("{x1,{x2,x1}}", 2), g7, {1: 0, 2: 1}) == 1
    with pytest.raises(UnboundVariable):
        eval_term(parse_term("{x1,x3}", 2), g7, {1: 0})
    with pytest.raises(ArityMismatch):
        eval_term(parse_term("{x1,x2,x3}", 3), g7, {1: 0, 2: 0, 3: 0})


@given(st.integers(0, 3**9 - 1), terms(2, 3), st.tuples(*[st.integers(0, 2)] * 3))
@settings(max_examples=150)
def test_eval_respects_embedding(k, t, vals):
    f = from_index(2, 3, k)
    base = int(eval_term(t, f, {i + 1: v for i, v in enumerate(vals)}))
    env = {i + 1: constant_map(2, 3, v).table for i, v in enumerate(vals)}
    lifted = eval_term(t, f, env)
    assert (lifted == base).all()


def test_satisfies_examples():
    g7 = g(7)
    assert satisfies_identity(g7, *parse_identity(CATALOG["commutativity"], 2))
    assert satisfies_identity(g7, *parse_identity(CATALOG["associativity"], 2))
    star = load_fixture("example-3.3-star")
    res = satisfies_identity(star, *parse_identity(CATALOG["commutativity"], 2))
    assert not res and res.exhaustive
    # lexicographically first failure is (1,2); (1,3) also fails
    assert res.counterexample == {1: 0, 2: 1}
    assert star(0, 2) == 2 and star(2, 0) == 0


def _brute_first(op, lhs, rhs):
    from mquasi.terms import variables

    t = max(variables(lhs) | variables(rhs))
    for vals in itertools.product(range(op.order), repeat=t):
        env = {i + 1: v for i, v in enumerate(vals)}
        if eval_term(lhs, op, env) != eval_term(rhs, op, env):
            return env
    return None


@given(st.integers(0, 3**9 - 1), terms(2, 3), terms(2, 3))
@settings(max_examples=150, deadline=None)
def test_satisfies_matches_brute_force(k, lhs, rhs):
    op = from_index(2, 3, k)
    res = satisfies_identity(op, lhs, rhs)
    expect = _brute_first(op, lhs, rhs)
    assert res.holds == (expect is None)
    assert res.counterexample == expect


def test_satisfies_guard_and_jobs():
    z3 = load_fixture("z3")
    lhs, rhs = parse_identity(CATALOG["mediality"], 2)
    with pytest.raises(CapacityExceeded):
        satisfies_identity(z3, lhs, rhs, guard=80)
    star = load_fixture("example-5.2-star")
    one = satisfies_identity(star, lhs, rhs)
    two = satisfies_identity(star, lhs, rhs, jobs=2)
    assert one == two


def test_lifted_examples():
    res = lifted_identity_check(g(7), 2, *parse_identity(CATALOG["commutativity"], 2))
    assert res.holds and res.exhaustive and res.checked == 256
    star = load_fixture("example-3.3-star")
    res = lifted_identity_check(star, 2, *parse_identity(CATALOG["commutativity"], 2))
    assert not res.holds and res.mode == "probabilistic"
    gam = [from_index(2, 3, k) for k in res.counterexample.values()]
    # reported pair consists of constant maps, and it is a real counterexample
    assert gam == [constant_map(2, 3, 0), constant_map(2, 3, 1)]
    # the constants gamma_1, gamma_3 fail as well
    env = {1: constant_map(2, 3, 0).table, 2: constant_map(2, 3, 2).table}
    lhs, rhs = parse_identity(CATALOG["commutativity"], 2)
    assert (eval_term(lhs, star, env) != eval_term(rhs, star, env)).any()


def test_lifted_exhaustive_counterexample_is_real():
    lhs, rhs = parse_identity(CATALOG["associativity"], 2)
    f = g(3)
    assert not satisfies_identity(f, lhs, rhs)
    res = lifted_identity_check(f, 2, lhs, rhs)
    assert not res.holds and res.exhaustive
    env = {v: from_index(2, 2, k).table for v, k in res.counterexample.items()}
    assert (eval_term(lhs, f, env) != eval_term(rhs, f, env)).any()


def test_lifted_capacity():
    with pytest.raises(CapacityExceeded):
        lifted_identity_check(load_fixture("example-5.2-star"), 6, *parse_identity(CATALOG["commutativity"], 2))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_identity_transfer_exhaustive(name, omega22):
    lhs, rhs = parse_identity(CATALOG[name], 2)
    for f in omega22:
        base = satisfies_identity(f, lhs, rhs)
        lifted = lifted_identity_check(f, 2, lhs, rhs)
        assert lifted.exhaustive
        assert base.holds == lifted.holds
