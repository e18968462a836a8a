"""Bucket and mini-bucket elimination over residuated preference algebras.

Both algorithms sweep the variables from last to first in the elimination
order.  The bucket of ``v`` holds every current constraint whose support
contains ``v``; since later variables are already gone, ``v`` is the highest
variable in each of them.  Mini-bucket elimination splits each bucket into
groups of bounded support and projects them separately, which yields a value
above the true optimum in the algebra order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from . import csp
from .core import PreferenceAlgebra, maximal
from .csp import Constraint, Problem, evaluate
from .errors import DomainError, InfeasibleZ

NAME_LEX = "name-lex"
MIN_DEGREE = "min-degree"


def natural_key(name: str):
    return [(0, int(part), "") if part.isdigit() else (1, 0, part) for part in re.split(r"(\d+)", name) if part]


def compute_order(p: Problem, policy: str = NAME_LEX) -> list:
    """Elimination order ``v_1 .. v_n`` (buckets are processed from ``v_n`` down)."""
    if policy == NAME_LEX:
        return sorted(p.variables, key=natural_key)
    if policy == MIN_DEGREE:
        neighbours = {v: set() for v in p.variables}
        for c in p.constraints:
            for v in c.support:
                neighbours[v].update(u for u in c.support if u != v)
        return sorted(p.variables, key=lambda v: (len(neighbours[v]), natural_key(v)))
    raise ValueError(f"unknown order policy {policy!r}")


@dataclass(frozen=True)
class Bucket:
    variable: str
    constraints: tuple


@dataclass(frozen=True)
class Partition:
    mini_buckets: tuple  # tuple of tuples of constraints
    z: Optional[int]

    def __len__(self):
        return len(self.mini_buckets)


def _support_of(cs) -> set:
    return {v for c in cs for v in c.support}


def bucket_partition(b: Bucket, z: int) -> Partition:
    """Greedy first-fit, constraints taken in id order."""
    groups = []
    for c in sorted(b.constraints, key=lambda c: natural_key(c.id)):
        if len(c.support) > z:
            raise InfeasibleZ(f"constraint {c.id} has arity {len(c.support)} > z = {z}")
        for g in groups:
            if len(_support_of(g) | set(c.support)) <= z:
                g.append(c)
                break
        else:
            groups.append([c])
    return Partition(tuple(tuple(g) for g in groups), z)


def trivial_partition(b: Bucket) -> Partition:
    return Partition((tuple(b.constraints),) if b.constraints else (), None)


@dataclass(frozen=True)
class BucketRecord:
    bucket: Bucket
    partition: Partition
    messages: tuple
    remaining: tuple  # constraints present before the bucket was processed


def sweep(p: Problem, order: Sequence[str], z: Optional[int] = None):
    """Eliminate ``order`` from last to first; returns (final constraints, records by variable)."""
    alg = p.algebra
    current = list(p.constraints)
    records = {}
    for v in reversed(order):
        members = tuple(c for c in current if v in c.support)
        bucket = Bucket(v, members)
        part = trivial_partition(bucket) if z is None else bucket_partition(bucket, z)
        messages = tuple(
            csp.project(alg, csp.combine_all(alg, q), v, cid=f"g[{v}]" if z is None else f"g[{v}].{j + 1}")
            for j, q in enumerate(part.mini_buckets)
        )
        records[v] = BucketRecord(bucket, part, messages, tuple(current))
        current = [c for c in current if v not in c.support] + list(messages)
    return current, records


def _close(alg: PreferenceAlgebra, constraints) -> object:
    return alg.combine_all(evaluate(c, {}) for c in constraints)


def mini_bucket_eliminate(p: Problem, z: int, order: Optional[Sequence[str]] = None):
    """Upper bound on the optimum: ``optimum <= result`` in the algebra order."""
    order = list(order) if order is not None else compute_order(p)
    final, _ = sweep(p, order, z)
    return _close(p.algebra, final)


def mini_bucket_trace(p: Problem, z: int, order: Optional[Sequence[str]] = None):
    order = list(order) if order is not None else compute_order(p)
    final, records = sweep(p, order, z)
    return _close(p.algebra, final), order, records


@dataclass(frozen=True)
class Solution:
    assignment: dict
    value: object

    def key(self):
        return tuple(sorted(self.assignment.items())), self.value


@dataclass(frozen=True)
class BEResult:
    bound: object
    solutions: tuple
    order: tuple
    records: dict


def _front_product(alg, fronts):
    out = [alg.identity]
    for f in fronts:
        out = maximal(alg, (alg.combine(x, y) for x in out for y in f))
    return out


def bucket_eliminate(p: Problem, order: Optional[Sequence[str]] = None) -> BEResult:
    """Exact bound and the full set of undominated solutions.

    The elimination sweep computes the bound as the join of all solution
    values.  Solutions are then rebuilt first to last.  An extension
    ``t.(v_i = d)`` is kept when the front of undominated values among its
    completions meets the global front.  Those fronts come from a second sweep
    that carries sets of undominated values in place of joins, so the
    comparison stays exact when the order is partial.
    """
    alg = p.algebra
    order = list(order) if order is not None else compute_order(p)
    final, records = sweep(p, order)
    bound = _close(alg, final)

    # same sweep with undominated-value sets in place of joins
    current = [
        Constraint(c.id, c.support, c.domains, tuple((x,) for x in c.table)) for c in p.constraints
    ]
    snapshots = {}
    for v in reversed(order):
        snapshots[v] = list(current)
        members = [c for c in current if v in c.support]
        if not members:
            continue
        doms = csp._domains_of(*members)
        support = tuple(u for u in csp._union_support(*members) if u != v)

        def front(t, members=members, v=v, doms=doms):
            vals = []
            for d in doms[v]:
                s = {**t, v: d}
                vals.extend(_front_product(alg, (evaluate(c, s) for c in members)))
            return tuple(maximal(alg, vals))

        msg = csp.tabulate(f"h[{v}]", support, doms, front)
        current = [c for c in current if v not in c.support] + [msg]
    best = set(_front_product(alg, (evaluate(c, {}) for c in current)))

    partial = [{}]
    for v in order:
        extended = []
        for t in partial:
            for d in p.domains[v]:
                s = {**t, v: d}
                reach = _front_product(alg, (evaluate(c, s) for c in snapshots[v]))
                if best.intersection(reach):
                    extended.append(s)
        partial = extended

    sols = []
    for t in partial:
        value = alg.combine_all(evaluate(c, t) for c in p.constraints)
        sols.append(Solution(t, value))
    return BEResult(bound, tuple(sols), tuple(order), records)


# --- approximation diagnostics -------------------------------------------


def exact_projection(alg: PreferenceAlgebra, b: Bucket) -> Constraint:
    return csp.project(alg, csp.combine_all(alg, b.constraints), b.variable, cid=f"exact[{b.variable}]")


def _check_partition(b: Bucket, q: Partition) -> None:
    members = [c for g in q.mini_buckets for c in g]
    if sorted(c.id for c in members) != sorted(c.id for c in b.constraints):
        raise DomainError(f"partition does not cover bucket {b.variable} exactly once")


def mu_of_partition(alg: PreferenceAlgebra, b: Bucket, q: Partition) -> Constraint:
    """Combination of the separately projected mini-buckets."""
    _check_partition(b, q)
    parts = [csp.project(alg, csp.combine_all(alg, g), b.variable) for g in q.mini_buckets]
    return csp.combine_all(alg, parts, cid=f"mu[{b.variable}]")


def bucket_distance(alg: PreferenceAlgebra, b: Bucket, q: Partition) -> Constraint:
    return csp.residuate_constraints(
        alg, exact_projection(alg, b), mu_of_partition(alg, b, q), cid=f"dist[{b.variable}]"
    )


def refined_mini_bucket_approx(alg: PreferenceAlgebra, b: Bucket, q: Partition, j: int) -> Constraint:
    """Approximation attached to mini-bucket ``j`` (1-based)."""
    _check_partition(b, q)
    if not 1 <= j <= len(q.mini_buckets):
        raise IndexError(f"mini-bucket index {j} outside 1..{len(q.mini_buckets)}")
    v = b.variable
    group = q.mini_buckets[j - 1]
    ids = {c.id for c in group}
    others = [c for c in b.constraints if c.id not in ids]
    whole = csp.combine_all(alg, b.constraints)
    rest = csp.combine_all(alg, others)
    lifted = csp.project(alg, csp.residuate_constraints(alg, whole, rest), v)
    own = csp.project(alg, csp.combine_all(alg, group), v)
    return csp.residuate_constraints(alg, lifted, own, cid=f"approx[{v}].{j}")


def composed_approx(alg: PreferenceAlgebra, b: Bucket, q: Partition) -> Constraint:
    parts = [refined_mini_bucket_approx(alg, b, q, j) for j in range(1, len(q.mini_buckets) + 1)]
    return csp.combine_all(alg, parts, cid=f"approx[{b.variable}]")
