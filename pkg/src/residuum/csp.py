"""Soft-CSP data model: variables with finite domains and dense table constraints.

Tables are row-major over the support's declaration order, first variable most
significant, so ``itertools.product`` over the support domains enumerates rows
in table order.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .core import PreferenceAlgebra
from .errors import ConstructionError, DomainError, MissingAssignment, ProblemError, ResiduumError
from .instances import make_algebra

Assignment = Mapping[str, str]


@dataclass(frozen=True)
class Constraint:
    id: str
    support: tuple
    domains: tuple  # one tuple of values per support variable
    table: tuple

    def __post_init__(self):
        if len(self.support) != len(self.domains):
            raise ValueError("support and domains must have equal length")
        if len(set(self.support)) != len(self.support):
            raise ValueError(f"constraint {self.id}: repeated variable in support")
        size = math.prod(len(d) for d in self.domains)
        if len(self.table) != size:
            raise ValueError(f"constraint {self.id}: table has {len(self.table)} entries, expected {size}")

    @property
    def arity(self) -> int:
        return len(self.support)

    def rows(self):
        """``(tuple of domain values, table entry)`` pairs in table order."""
        return zip(itertools.product(*self.domains), self.table)

    def index(self, values: Sequence) -> int:
        idx = 0
        for d, v in zip(self.domains, values):
            idx = idx * len(d) + d.index(v)
        return idx


def constant(cid: str, value) -> Constraint:
    return Constraint(cid, (), (), (value,))


def tabulate(cid, support, domains, fn) -> Constraint:
    """Build a constraint whose entry for each support tuple ``t`` is ``fn(dict(t))``."""
    support = tuple(support)
    doms = tuple(tuple(domains[v]) for v in support)
    table = tuple(fn(dict(zip(support, row))) for row in itertools.product(*doms))
    return Constraint(cid, support, doms, table)


def evaluate(c: Constraint, t: Assignment):
    try:
        values = [t[v] for v in c.support]
    except KeyError as exc:
        raise MissingAssignment(f"constraint {c.id}: variable {exc.args[0]!r} is unassigned") from None
    try:
        return c.table[c.index(values)]
    except ValueError:
        raise DomainError(f"constraint {c.id}: assignment {values} outside the domains") from None


def _domains_of(*cs: Constraint) -> dict:
    doms = {}
    for c in cs:
        doms.update(zip(c.support, c.domains))
    return doms


def _union_support(*cs: Constraint) -> tuple:
    return tuple(dict.fromkeys(v for c in cs for v in c.support))


def combine_constraints(alg: PreferenceAlgebra, c1: Constraint, c2: Constraint, cid: Optional[str] = None) -> Constraint:
    doms = _domains_of(c1, c2)
    return tabulate(cid or f"({c1.id}*{c2.id})", _union_support(c1, c2), doms,
                    lambda t: alg.combine(evaluate(c1, t), evaluate(c2, t)))


def combine_all(alg: PreferenceAlgebra, cs: Sequence[Constraint], cid: Optional[str] = None) -> Constraint:
    """Combination of a list of constraints; the empty list gives the identity constant."""
    cs = list(cs)
    if not cs:
        return constant(cid or "one", alg.identity)
    doms = _domains_of(*cs)
    return tabulate(cid or "*".join(c.id for c in cs), _union_support(*cs), doms,
                    lambda t: alg.combine_all(evaluate(c, t) for c in cs))


def residuate_constraints(alg: PreferenceAlgebra, c1: Constraint, c2: Constraint, cid: Optional[str] = None) -> Constraint:
    doms = _domains_of(c1, c2)
    return tabulate(cid or f"({c1.id}/{c2.id})", _union_support(c1, c2), doms,
                    lambda t: alg.residual(evaluate(c1, t), evaluate(c2, t)))


def project(alg: PreferenceAlgebra, c: Constraint, v: str, cid: Optional[str] = None) -> Constraint:
    """Eliminate ``v`` by joining over its domain."""
    if v not in c.support:
        raise DomainError(f"variable {v!r} is not in the support of {c.id}")
    pos = c.support.index(v)
    dom = c.domains[pos]
    rest = c.support[:pos] + c.support[pos + 1:]
    doms = _domains_of(c)
    return tabulate(cid or f"{c.id}|{v}", rest, doms,
                    lambda t: alg.join(evaluate(c, {**t, v: d}) for d in dom))


def condition(c: Constraint, t: Assignment) -> Constraint:
    """Restrict ``c`` to the rows agreeing with the assigned part of ``t``."""
    free = tuple(v for v in c.support if v not in t)
    if len(free) == len(c.support):
        return c
    doms = _domains_of(c)
    return tabulate(c.id, free, doms, lambda s: evaluate(c, {**t, **s}))


def constraint_json(alg: PreferenceAlgebra, c: Constraint) -> dict:
    return {
        "id": c.id,
        "scope": list(c.support),
        "table": [{"assign": list(row), "value": alg.encode(v)} for row, v in c.rows()],
    }


@dataclass(frozen=True)
class Problem:
    algebra: PreferenceAlgebra
    variables: tuple
    domains: dict = field(hash=False)
    constraints: tuple

    @property
    def size(self) -> int:
        return math.prod(len(self.domains[v]) for v in self.variables)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.spec,
            "variables": [{"name": v, "domain": list(self.domains[v])} for v in self.variables],
            "constraints": [constraint_json(self.algebra, c) for c in self.constraints],
        }


def validate_problem(p: Problem) -> list:
    """Every violated invariant of ``p``, as human-readable diagnostics."""
    diags = []
    if len(set(p.variables)) != len(p.variables):
        diags.append("duplicate variable names")
    for v in p.variables:
        dom = p.domains.get(v, ())
        if not dom:
            diags.append(f"variable {v}: empty domain")
        elif len(set(dom)) != len(dom):
            diags.append(f"variable {v}: duplicate domain values")
    covered = set()
    for c in p.constraints:
        for v, d in zip(c.support, c.domains):
            if v not in p.domains:
                diags.append(f"constraint {c.id}: unknown variable {v!r} in scope")
            elif tuple(d) != tuple(p.domains[v]):
                diags.append(f"constraint {c.id}: domain of {v} differs from its declaration")
        covered.update(c.support)
        for i, x in enumerate(c.table):
            if not p.algebra.contains(x):
                diags.append(f"constraint {c.id}: entry {i} is not an element of {p.algebra.name}")
                break
    for v in p.variables:
        if v not in covered:
            diags.append(f"variable {v}: not in the scope of any constraint")
    return diags


def problem_from_dict(doc) -> Problem:
    """Build and validate a problem from its parsed JSON document."""
    if not isinstance(doc, dict):
        raise ProblemError(["problem document must be a JSON object"])
    diags = []
    try:
        alg = make_algebra(doc.get("algebra"))
    except ConstructionError as exc:
        raise ProblemError([f"algebra: {exc}"]) from None

    variables, domains = [], {}
    for i, entry in enumerate(doc.get("variables") or []):
        if not isinstance(entry, dict) or "name" not in entry or not isinstance(entry.get("domain"), list):
            diags.append(f"variables[{i}]: expected {{'name', 'domain'}}")
            continue
        name = str(entry["name"])
        variables.append(name)
        domains[name] = tuple(str(x) for x in entry["domain"])
    if not variables:
        diags.append("no variables declared")

    constraints = []
    seen_ids = set()
    for i, entry in enumerate(doc.get("constraints") or []):
        cid = str(entry.get("id", f"c{i}")) if isinstance(entry, dict) else f"c{i}"
        if not isinstance(entry, dict) or not isinstance(entry.get("scope"), list):
            diags.append(f"constraint {cid}: expected an object with a 'scope' array")
            continue
        if cid in seen_ids:
            diags.append(f"constraint {cid}: duplicate id")
        seen_ids.add(cid)
        scope = tuple(str(v) for v in entry["scope"])
        unknown = [v for v in scope if v not in domains]
        if unknown:
            diags.append(f"constraint {cid}: unknown variable {unknown[0]!r} in scope")
            continue
        if len(set(scope)) != len(scope):
            diags.append(f"constraint {cid}: repeated variable in scope")
            continue
        try:
            constraints.append(_parse_table(alg, cid, scope, domains, entry))
        except (ResiduumError, ValueError) as exc:
            diags.append(f"constraint {cid}: {exc}")
    if diags:
        raise ProblemError(diags)
    p = Problem(alg, tuple(variables), domains, tuple(constraints))
    diags = validate_problem(p)
    if diags:
        raise ProblemError(diags)
    return p


def _parse_table(alg, cid, scope, domains, entry) -> Constraint:
    doms = tuple(domains[v] for v in scope)
    size = math.prod(len(d) for d in doms)
    rows = entry.get("table", [])
    if not isinstance(rows, list):
        raise ValueError("'table' must be an array")
    default = alg.decode(entry["default"]) if "default" in entry else None
    table = [default] * size
    probe = Constraint(cid, scope, doms, (None,) * size)
    filled = set()
    for j, row in enumerate(rows):
        assign = row.get("assign") if isinstance(row, dict) else None
        if not isinstance(assign, list) or len(assign) != len(scope):
            raise ValueError(f"table row {j}: 'assign' must list one value per scope variable")
        assign = [str(x) for x in assign]
        for v, x in zip(scope, assign):
            if x not in domains[v]:
                raise ValueError(f"table row {j}: {x!r} is not in the domain of {v}")
        if "value" not in row:
            raise ValueError(f"table row {j}: missing 'value'")
        idx = probe.index(assign)
        if idx in filled:
            raise ValueError(f"table row {j}: duplicate row for {assign}")
        filled.add(idx)
        table[idx] = alg.decode(row["value"])
    missing = sum(x is None for x in table)
    if missing:
        raise ValueError(f"table has {missing} of {size} entries undefined and no default")
    return Constraint(cid, scope, doms, tuple(table))


def parse_problem(text: str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError([f"malformed JSON: {exc}"]) from None
    return problem_from_dict(doc)
