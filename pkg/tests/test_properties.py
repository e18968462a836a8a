"""Randomized law checks; every expectation comes from an independent definition."""
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import clipped_residual, lex_brute_residual, lex_leq
from residuum.core import Order
from residuum.elimination import bucket_eliminate, mini_bucket_eliminate
from residuum.generate import CORPUS_ALGEBRAS, random_problem
from residuum.instances import INF, NEG_INF, Chain, ExtendedInt, Product, Tropical
from residuum.lex import LexTuple, lex_compare, lex_residual
from residuum.search import TrivialUB, brute_force_solve, same_frontier, soft_dfbb

T = Tropical()
Z = ExtendedInt()

trop = st.one_of(st.integers(0, 10), st.just(INF))
ext = st.one_of(st.integers(-8, 8), st.just(INF), st.just(NEG_INF))
chain_val = st.integers(0, 4)
C4 = Chain(4)


@given(trop, trop, trop)
def test_tropical_adjunction(a, b, c):
    assert T.leq(T.combine(b, c), a) == T.leq(c, T.residual(a, b))


@given(ext, ext, ext)
def test_extended_int_adjunction(a, b, c):
    assert Z.leq(Z.combine(b, c), a) == Z.leq(c, Z.residual(a, b))


@given(trop, trop)
def test_tropical_residual_oracle(a, b):
    assert T.residual(a, b) == clipped_residual(T, a, b)


@given(ext, ext)
def test_extended_residual_oracle(a, b):
    assert Z.residual(a, b) == clipped_residual(Z, a, b)


@given(trop, trop, trop)
def test_tropical_monotone(a, b, c):
    if T.leq(a, b):
        assert T.leq(T.combine(a, c), T.combine(b, c))


@given(st.tuples(chain_val, chain_val), st.tuples(chain_val, chain_val), st.tuples(chain_val, chain_val))
def test_product_adjunction(a, b, c):
    p = Product(C4, C4)
    assert p.leq(p.combine(b, c), a) == p.leq(c, p.residual(a, b))


@given(trop, trop)
def test_join_is_an_upper_bound(a, b):
    j = T.join([a, b])
    assert T.leq(a, j) and T.leq(b, j)


def _lex_tuple(draw_vals):
    # collapsing components are followed by bottom only
    out = []
    for x in draw_vals:
        out.append(x)
        if C4.is_collapsing(x):
            out.extend([C4.bottom] * (len(draw_vals) - len(out)))
            break
    return LexTuple(tuple(out))


lex3 = st.lists(chain_val, min_size=3, max_size=3).map(_lex_tuple)


@given(lex3, lex3)
def test_lex_compare_matches_independent_order(a, b):
    c = lex_compare(C4, a, b)
    assert c.is_leq == lex_leq(C4, a, b)
    assert (c is Order.EQ) == (a == b)


@settings(max_examples=60, deadline=None)
@given(lex3, lex3)
def test_lex_residual_matches_enumeration(a, b):
    assert lex_residual(C4, a, b).components == tuple(lex_brute_residual(C4, a, b, list(range(5))))


corpus_case = st.tuples(st.integers(10_000, 20_000), st.sampled_from(CORPUS_ALGEBRAS))


@settings(max_examples=40, deadline=None)
@given(corpus_case)
def test_be_matches_enumeration(case):
    seed, spec = case
    p = random_problem(seed, spec)
    bound, front = brute_force_solve(p)
    res = bucket_eliminate(p)
    assert res.bound == bound
    assert same_frontier(res.solutions, front)


@settings(max_examples=40, deadline=None)
@given(corpus_case, st.integers(1, 5))
def test_mbe_dominates_optimum(case, z):
    seed, spec = case
    p = random_problem(seed, spec)
    if z < max(c.arity for c in p.constraints):
        return
    bound, _ = brute_force_solve(p)
    assert p.algebra.leq(bound, mini_bucket_eliminate(p, z))


@settings(max_examples=40, deadline=None)
@given(corpus_case)
def test_dfbb_matches_enumeration(case):
    seed, spec = case
    p = random_problem(seed, spec)
    assert same_frontier(soft_dfbb(p, ub_policy=TrivialUB()), brute_force_solve(p)[1])
