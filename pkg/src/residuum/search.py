"""Exhaustive enumeration and soft depth-first branch-and-bound."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import csp
from .core import Order, PreferenceAlgebra
from .csp import Problem, evaluate
from .elimination import NAME_LEX, Solution, compute_order, mini_bucket_eliminate
from .errors import ResourceLimit

DEFAULT_CAP = 10**6


def frontier(alg: PreferenceAlgebra, sols: Iterable[Solution]) -> list:
    """Solutions whose value is not strictly below another's; ties are all kept."""
    sols = list(sols)
    return [s for s in sols if not any(alg.lt(s.value, o.value) for o in sols)]


def brute_force_solve(p: Problem, cap: int = DEFAULT_CAP):
    """(join of every full-assignment value, undominated solutions) by enumeration."""
    if p.size > cap:
        raise ResourceLimit(f"{p.size} assignments exceed the enumeration cap {cap}")
    alg = p.algebra
    sols = []
    for row in itertools.product(*(p.domains[v] for v in p.variables)):
        t = dict(zip(p.variables, row))
        sols.append(Solution(t, alg.combine_all(evaluate(c, t) for c in p.constraints)))
    return alg.join(s.value for s in sols), tuple(frontier(alg, sols))


@dataclass(frozen=True)
class TrivialUB:
    """Assigned constraints at their value, the rest at the top element."""

    name = "trivial"


@dataclass(frozen=True)
class MiniBucketUB:
    """Mini-bucket bound of the problem conditioned on the partial assignment."""

    z: int
    name = "mbe"


def conditioned(p: Problem, t) -> Problem:
    free = tuple(v for v in p.variables if v not in t)
    cons = tuple(csp.condition(c, t) for c in p.constraints)
    return Problem(p.algebra, free, {v: p.domains[v] for v in free}, cons)


def ub_estimate(p: Problem, t, policy=TrivialUB()) -> tuple:
    """Upper bounds dominating the value of every completion of ``t``."""
    alg = p.algebra
    if isinstance(policy, MiniBucketUB):
        return (mini_bucket_eliminate(conditioned(p, t), policy.z),)
    vals = []
    for c in p.constraints:
        if all(v in t for v in c.support):
            vals.append(evaluate(c, t))
        elif alg.top is not None:
            vals.append(alg.top)
    return (alg.combine_all(vals),)


def soft_dfbb(
    p: Problem,
    lb0: Optional[Sequence] = None,
    ub_policy=TrivialUB(),
    order_policy: str = NAME_LEX,
) -> tuple:
    """Every undominated solution, found depth-first with bound-based pruning.

    ``lb0`` seeds the lower-bound set with acceptance thresholds (default: the
    bottom element).  A child is skipped only when every upper bound in its
    estimate is strictly below some lower bound, so incomparable bounds never
    prune and ties are explored.
    """
    alg = p.algebra
    order = compute_order(p, order_policy)
    if isinstance(ub_policy, MiniBucketUB):
        # children only see conditioned subproblems, so check z on the full one
        ub_estimate(p, {}, ub_policy)
    seeds = [alg.bottom] if lb0 is None else list(lb0)
    # entries keyed by assignment; seeds use ("seed", i) keys and are dropped at the end
    lb = {("seed", i): v for i, v in enumerate(seeds)}

    def prune(bounds, lb):
        return all(any(alg.compare(u, l) is Order.LT for l in lb.values()) for u in bounds)

    def search(t, lb):
        if len(t) == len(order):
            key = tuple((v, t[v]) for v in order)
            return {key: alg.combine_all(evaluate(c, t) for c in p.constraints)}
        v = order[len(t)]
        for d in p.domains[v]:
            child = {**t, v: d}
            if prune(ub_estimate(p, child, ub_policy), lb):
                continue
            merged = {**lb, **search(child, lb)}
            lb = {k: x for k, x in merged.items() if not any(alg.lt(x, y) for y in merged.values())}
        return lb

    found = search({}, lb)
    sols = [Solution(dict(k), x) for k, x in found.items() if not (k and k[0] == "seed")]
    return tuple(sols)


def same_frontier(a: Iterable[Solution], b: Iterable[Solution]) -> bool:
    ka = sorted((s.key() for s in a), key=repr)
    kb = sorted((s.key() for s in b), key=repr)
    return ka == kb
