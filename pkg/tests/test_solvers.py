import pytest

from residuum import csp
from residuum.csp import Constraint, Problem
from residuum.elimination import (
    MIN_DEGREE,
    NAME_LEX,
    Bucket,
    Partition,
    bucket_distance,
    bucket_eliminate,
    bucket_partition,
    composed_approx,
    compute_order,
    exact_projection,
    mini_bucket_eliminate,
    mu_of_partition,
    refined_mini_bucket_approx,
    trivial_partition,
)
from residuum.errors import InfeasibleZ, ResourceLimit
from residuum.generate import corpus, random_problem
from residuum.instances import Chain, Product, Tropical
from residuum.search import MiniBucketUB, TrivialUB, brute_force_solve, same_frontier, soft_dfbb, ub_estimate

T = Tropical()
AB = ("a", "b")


def make(alg, domains, constraints):
    return Problem(alg, tuple(domains), dict(domains), tuple(constraints))


def unary(cid, v, values, dom=AB):
    return Constraint(cid, (v,), (dom,), tuple(values))


def binary(cid, u, v, values, dom=AB):
    return Constraint(cid, (u, v), (dom, dom), tuple(values))


@pytest.fixture
def chain2():
    return make(T, {"v1": AB, "v2": AB}, [unary("c1", "v1", [1, 4]), binary("c2", "v1", "v2", [5, 0, 1, 2])])


@pytest.fixture
def pareto():
    P = Product(Chain(3), Chain(3))
    return make(
        P,
        {"v1": AB, "v2": AB},
        [unary("c1", "v1", [(0, 2), (2, 0)], AB), binary("c2", "v1", "v2", [(0, 0), (3, 3), (3, 3), (0, 0)])],
    )


def keys(sols):
    return sorted(s.key() for s in sols)


# --- ordering and partitioning ---------------------------------------------------------


def test_name_lex_is_numeric_aware():
    p = make(T, {"v2": AB, "v10": AB, "v1": AB}, [unary("c", v, [0, 0]) for v in ("v2", "v10", "v1")])
    assert compute_order(p, NAME_LEX) == ["v1", "v2", "v10"]


def test_min_degree_star():
    doms = {v: AB for v in ("c", "l1", "l2", "l3")}
    p = make(T, doms, [binary(f"e{i}", "c", f"l{i}", [0, 0, 0, 0]) for i in (1, 2, 3)])
    assert compute_order(p, MIN_DEGREE) == ["l1", "l2", "l3", "c"]


def test_single_variable_order():
    assert compute_order(make(T, {"v": AB}, [unary("c", "v", [0, 1])])) == ["v"]


def test_greedy_partition_example():
    c1 = binary("c1", "v1", "v3", [0] * 4)
    c2 = binary("c2", "v2", "v3", [0] * 4)
    c3 = unary("c3", "v3", [0, 0])
    q = bucket_partition(Bucket("v3", (c2, c3, c1)), 2)
    assert [[c.id for c in g] for g in q.mini_buckets] == [["c1", "c3"], ["c2"]]
    assert len(bucket_partition(Bucket("v3", (c1, c2, c3)), 3)) == 1
    with pytest.raises(InfeasibleZ):
        bucket_partition(Bucket("v3", (c1,)), 1)


# --- bucket elimination -------------------------------------------------------------------


def test_be_one_variable():
    res = bucket_eliminate(make(T, {"v": AB}, [unary("c", "v", [3, 5])]))
    assert res.bound == 3
    assert keys(res.solutions) == [((("v", "a"),), 3)]


def test_be_chain_example(chain2):
    res = bucket_eliminate(chain2)
    bound, front = brute_force_solve(chain2)
    assert res.bound == bound == 1
    assert keys(res.solutions) == keys(front) == [((("v1", "a"), ("v2", "b")), 1)]


def test_be_keeps_incomparable_optima(pareto):
    res = bucket_eliminate(pareto)
    assert {s.value for s in res.solutions} == {(0, 2), (2, 0)}
    assert same_frontier(res.solutions, brute_force_solve(pareto)[1])


def test_mbe_examples(chain2):
    p = make(T, {"v": AB}, [unary("c", "v", [3, 5])])
    assert mini_bucket_eliminate(p, 1) == 3
    assert mini_bucket_eliminate(chain2, 2) == 1
    with pytest.raises(InfeasibleZ):
        mini_bucket_eliminate(chain2, 1)


def test_mbe_width_one_is_sound_on_three_variables():
    doms = {v: ("a", "b", "c") for v in ("v1", "v2", "v3")}
    cs = [unary("u1", "v1", [4, 0, 2], doms["v1"]), unary("u2", "v2", [1, 3, 0], doms["v2"]), unary("u3", "v3", [2, 2, 5], doms["v3"])]
    p = make(T, doms, cs)
    opt, _ = brute_force_solve(p)
    assert mini_bucket_eliminate(p, 1) <= opt


# --- distances and approximations ---------------------------------------------------------


@pytest.fixture
def split():
    b = Bucket("v", (unary("c1", "v", [3, 5]), unary("c2", "v", [2, 0])))
    return b, Partition(((b.constraints[0],), (b.constraints[1],)), 1)


def test_mu_single_bucket_is_exact(split):
    b, _ = split
    assert mu_of_partition(T, b, trivial_partition(b)).table == exact_projection(T, b).table == (5,)


def test_mu_split_example(split):
    b, q = split
    assert mu_of_partition(T, b, q).table == (3,)


def test_distance_examples(split):
    b, q = split
    assert bucket_distance(T, b, trivial_partition(b)).table == (0,)
    assert bucket_distance(T, b, q).table == (2,)


def test_refined_approximation_by_hand(split):
    b, q = split
    # whole = {5,5}; rest for j=1 is c2 = {2,0}; (whole - rest) = {3,5}, projected 3;
    # own projection min(3,5) = 3, so approx = 3 - 3 = 0
    assert refined_mini_bucket_approx(T, b, q, 1).table == (0,)
    # j=2: whole - c1 = {2,0} -> 0; own = 0 -> approx 0
    assert refined_mini_bucket_approx(T, b, q, 2).table == (0,)
    with pytest.raises(IndexError):
        refined_mini_bucket_approx(T, b, q, 3)


def test_composed_approximation(split):
    b, q = split
    parts = [refined_mini_bucket_approx(T, b, q, j) for j in (1, 2)]
    assert composed_approx(T, b, q).table == csp.combine_all(T, parts).table
    assert composed_approx(T, b, trivial_partition(b)).table == (0,)
    empty = Bucket("v", ())
    assert composed_approx(T, empty, trivial_partition(empty)).table == (0,)


# --- search -------------------------------------------------------------------------------------


def test_ub_estimates(chain2):
    full = {"v1": "a", "v2": "b"}
    assert ub_estimate(chain2, full, TrivialUB()) == (1,)
    assert ub_estimate(chain2, full, MiniBucketUB(2)) == (1,)
    assert ub_estimate(chain2, {}, TrivialUB()) == (0,)
    assert ub_estimate(chain2, {}, MiniBucketUB(2)) == (1,)


def test_dfbb_one_variable():
    p = make(T, {"v": ("a", "b", "c")}, [unary("c", "v", [3, 5, 3], ("a", "b", "c"))])
    assert keys(soft_dfbb(p)) == [((("v", "a"),), 3), ((("v", "c"),), 3)]


@pytest.mark.parametrize("policy", [TrivialUB(), MiniBucketUB(2)], ids=["trivial", "mbe"])
def test_dfbb_chain(chain2, policy):
    assert keys(soft_dfbb(chain2, ub_policy=policy)) == [((("v1", "a"), ("v2", "b")), 1)]


@pytest.mark.parametrize("policy", [TrivialUB(), MiniBucketUB(1), MiniBucketUB(2)], ids=["trivial", "mbe1", "mbe2"])
def test_dfbb_incomparable_optima(pareto, policy):
    if policy.name == "mbe" and policy.z == 1:
        with pytest.raises(InfeasibleZ):
            soft_dfbb(pareto, ub_policy=policy)
        return
    assert {s.value for s in soft_dfbb(pareto, ub_policy=policy)} == {(0, 2), (2, 0)}


def test_dfbb_threshold_seed(chain2):
    # a threshold at the optimum still admits it; one above it admits nothing
    assert keys(soft_dfbb(chain2, lb0=[1])) == [((("v1", "a"), ("v2", "b")), 1)]
    assert soft_dfbb(chain2, lb0=[0]) == ()


def test_brute_force_cap():
    p = random_problem(3, {"kind": "tropical"})
    with pytest.raises(ResourceLimit):
        brute_force_solve(p, cap=0)


def test_generator_is_deterministic():
    a = [p.to_json() for _, p in corpus(8)]
    b = [p.to_json() for _, p in corpus(8)]
    assert a == b
