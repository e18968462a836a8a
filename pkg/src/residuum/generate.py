"""Seeded random soft-CSP instances for equivalence testing."""
from __future__ import annotations

import random

from .csp import Constraint, Problem
from .instances import Tropical, make_algebra

CORPUS_ALGEBRAS = (
    {"kind": "tropical"},
    {"kind": "chain", "n": 6},
    {"kind": "product", "left": {"kind": "chain", "n": 3}, "right": {"kind": "chain", "n": 3}},
    {"kind": "lex", "base": {"kind": "chain", "n": 3}, "k": 2},
)


def _value(alg, rng):
    if isinstance(alg, Tropical):
        return float("inf") if rng.random() < 0.1 else rng.randint(0, 9)
    return alg.sample(rng)


def random_problem(seed: int, algebra_spec, max_vars: int = 5, max_domain: int = 3,
                   max_constraints: int = 6, max_arity: int = 3) -> Problem:
    rng = random.Random(seed)
    alg = make_algebra(algebra_spec)
    n = rng.randint(1, max_vars)
    names = [f"v{i + 1}" for i in range(n)]
    domains = {v: tuple("abcdefgh"[: rng.randint(1, max_domain)]) for v in names}
    scopes = []
    for _ in range(rng.randint(1, max_constraints)):
        k = rng.randint(1, min(max_arity, n))
        scopes.append(rng.sample(names, k))
    for v in names:
        if not any(v in s for s in scopes):
            if len(scopes) < max_constraints:
                scopes.append([v])
            else:
                rng.choice(scopes).append(v)
    constraints = []
    for i, scope in enumerate(scopes):
        doms = tuple(domains[v] for v in scope)
        size = 1
        for d in doms:
            size *= len(d)
        table = tuple(_value(alg, rng) for _ in range(size))
        constraints.append(Constraint(f"c{i + 1}", tuple(scope), doms, table))
    return Problem(alg, tuple(names), domains, tuple(constraints))


def corpus(count: int = 200, start: int = 0):
    """``count`` problems cycling through :data:`CORPUS_ALGEBRAS`, seeds ``start..``."""
    for seed in range(start, start + count):
        yield seed, random_problem(seed, CORPUS_ALGEBRAS[seed % len(CORPUS_ALGEBRAS)])
