"""Batch command-line front end.

Commands read a problem (or algebra) as JSON and write a JSON document to
standard output or ``--output``.  Exit statuses: 0 success, 1 a claimed law
or reference check failed, 2 invalid input or options, 3 resource limits.
Every error prints exactly one line on standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import csp
from .core import EXHAUSTIVE
from .elimination import (
    MIN_DEGREE,
    NAME_LEX,
    bucket_distance,
    bucket_eliminate,
    composed_approx,
    compute_order,
    mini_bucket_trace,
    mu_of_partition,
    refined_mini_bucket_approx,
    sweep,
)
from .errors import (
    ConstructionError,
    DomainError,
    InfeasibleZ,
    ProblemError,
    ResiduumError,
    ResourceLimit,
    UnsupportedOperation,
)
from .generate import CORPUS_ALGEBRAS, random_problem
from .instances import make_algebra
from .laws import DEFAULT_SAMPLES, DEFAULT_SEED, check_laws
from .search import MiniBucketUB, TrivialUB, soft_dfbb

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, kind: str, message: str, status: int = EXIT_INVALID):
        super().__init__(message)
        self.kind = kind
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


# --- input ---------------------------------------------------------------


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}") from None


def _load_problem(args) -> csp.Problem:
    if not args.input:
        raise CliError("usage", "--input is required")
    try:
        return csp.parse_problem(_read_text(args.input))
    except ProblemError as exc:
        raise CliError("validation", "; ".join(exc.diagnostics)) from None


def _load_algebra(args):
    if args.algebra is not None:
        try:
            spec = json.loads(args.algebra)
        except json.JSONDecodeError as exc:
            raise CliError("validation", f"--algebra is not valid JSON: {exc}") from None
    elif args.input:
        try:
            doc = json.loads(_read_text(args.input))
        except json.JSONDecodeError as exc:
            raise CliError("validation", f"malformed JSON: {exc}") from None
        spec = doc.get("algebra", doc) if isinstance(doc, dict) else doc
    else:
        raise CliError("usage", "either --algebra or --input is required")
    try:
        return make_algebra(spec)
    except ConstructionError as exc:
        raise CliError("validation", f"algebra: {exc}") from None


def _require_z(args, why: str) -> int:
    if args.z is None:
        raise CliError("usage", f"--z is required {why}")
    if args.z < 1:
        raise CliError("usage", "--z must be at least 1")
    return args.z


def _reject(args, *names, why: str):
    for name in names:
        if getattr(args, name) not in (None, False, []):
            raise CliError("usage", f"--{name} is not applicable {why}")


# --- output --------------------------------------------------------------


def _solution_json(p: csp.Problem, s) -> dict:
    return {
        "assignment": {v: s.assignment[v] for v in p.variables},
        "value": p.algebra.encode(s.value),
    }


def _sorted_solutions(p: csp.Problem, sols):
    def key(s):
        return tuple(p.domains[v].index(s.assignment[v]) for v in p.variables)

    return sorted(sols, key=key)


def _bucket_json(v, rec) -> dict:
    entry = {"variable": v, "constraints": [c.id for c in rec.bucket.constraints]}
    entry["mini_buckets"] = [[c.id for c in g] for g in rec.partition.mini_buckets]
    entry["messages"] = [{"id": m.id, "scope": list(m.support)} for m in rec.messages]
    return entry


def _result(algorithm, p, bound, sols, order, buckets, distances, seed) -> dict:
    return {
        "algorithm": algorithm,
        "bound": None if bound is None else p.algebra.encode(bound),
        "solutions": [_solution_json(p, s) for s in _sorted_solutions(p, sols)],
        "diagnostics": {"order": list(order), "buckets": buckets, "distances": distances},
        "seed": seed,
    }


# --- commands ------------------------------------------------------------


def cmd_solve(args):
    p = _load_problem(args)
    order = compute_order(p, args.order)
    if args.algorithm == "be":
        _reject(args, "z", "ub", "lb", why="to bucket elimination")
        res = bucket_eliminate(p, order)
        buckets = [_bucket_json(v, res.records[v]) for v in reversed(order)]
        return EXIT_OK, _result("be", p, res.bound, res.solutions, order, buckets, [], args.seed)

    ub_name = args.ub or "trivial"
    if ub_name == "mbe":
        policy = MiniBucketUB(_require_z(args, "for --ub mbe"))
    else:
        _reject(args, "z", why="to --ub trivial")
        policy = TrivialUB()
    lb0 = None
    if args.lb:
        try:
            lb0 = [p.algebra.decode(json.loads(x)) for x in args.lb]
        except (json.JSONDecodeError, DomainError) as exc:
            raise CliError("validation", f"--lb: {exc}") from None
    sols = soft_dfbb(p, lb0=lb0, ub_policy=policy, order_policy=args.order)
    bound = p.algebra.join(s.value for s in sols) if sols else None
    out = _result("dfbb", p, bound, sols, order, [], [], args.seed)
    out["diagnostics"]["ub"] = ub_name
    return EXIT_OK, out


def _distance_rows(p, v, rec) -> dict:
    alg = p.algebra
    return {"variable": v, "distance": csp.constraint_json(alg, bucket_distance(alg, rec.bucket, rec.partition))}


def cmd_bound(args):
    _reject(args, "ub", "lb", why="to the bound command")
    z = _require_z(args, "for the bound command")
    p = _load_problem(args)
    order = compute_order(p, args.order)
    value, _, records = mini_bucket_trace(p, z, order)
    buckets = [_bucket_json(v, records[v]) for v in reversed(order)]
    distances = [_distance_rows(p, v, records[v]) for v in reversed(order) if records[v].bucket.constraints]
    out = _result("mbe", p, value, [], order, buckets, distances, args.seed)
    status = EXIT_OK
    if args.reference:
        ref = _reference_value(p, args.reference)
        holds = p.algebra.leq(ref, value)
        out["reference"] = {"value": p.algebra.encode(ref), "dominated": holds}
        status = EXIT_OK if holds else EXIT_FAILED
    return status, out


def _reference_value(p, path):
    try:
        doc = json.loads(_read_text(path))
        return p.algebra.decode(doc["bound"] if isinstance(doc, dict) else doc)
    except (json.JSONDecodeError, KeyError, TypeError, DomainError) as exc:
        raise CliError("validation", f"reference {path}: {exc!s}") from None


def cmd_distance(args):
    _reject(args, "ub", "lb", why="to the distance command")
    z = _require_z(args, "for the distance command")
    if not args.variable:
        raise CliError("usage", "--variable is required for the distance command")
    p = _load_problem(args)
    if args.variable not in p.variables:
        raise CliError("validation", f"unknown variable {args.variable!r}")
    order = compute_order(p, args.order)
    _, records = sweep(p, order, z)
    rec = records[args.variable]
    if not rec.bucket.constraints:
        raise CliError("validation", f"bucket of {args.variable} is empty")
    alg, b, q = p.algebra, rec.bucket, rec.partition
    enc = lambda c: csp.constraint_json(alg, c)  # noqa: E731
    out = {
        "algorithm": "distance",
        "variable": args.variable,
        "z": z,
        "bucket": _bucket_json(args.variable, rec),
        "mu": enc(mu_of_partition(alg, b, q)),
        "distance": enc(bucket_distance(alg, b, q)),
        "approximations": [enc(refined_mini_bucket_approx(alg, b, q, j)) for j in range(1, len(q) + 1)],
        "composed": enc(composed_approx(alg, b, q)),
        "diagnostics": {"order": order},
        "seed": args.seed,
    }
    return EXIT_OK, out


def cmd_check(args):
    _reject(args, "z", "ub", "lb", "variable", why="to the check command")
    alg = _load_algebra(args)
    budget = EXHAUSTIVE if args.exhaustive else args.samples
    seed = DEFAULT_SEED if args.seed is None else args.seed
    try:
        report = check_laws(alg, budget, seed)
    except UnsupportedOperation as exc:
        raise CliError("unsupported", str(exc)) from None
    return (EXIT_OK if report.ok else EXIT_FAILED), report.to_json(alg)


def cmd_generate(args):
    seed = 0 if args.seed is None else args.seed
    spec = CORPUS_ALGEBRAS[seed % len(CORPUS_ALGEBRAS)]
    if args.algebra is not None:
        try:
            spec = json.loads(args.algebra)
        except json.JSONDecodeError as exc:
            raise CliError("validation", f"--algebra is not valid JSON: {exc}") from None
    try:
        p = random_problem(seed, spec)
    except ConstructionError as exc:
        raise CliError("validation", f"algebra: {exc}") from None
    out = p.to_json()
    out["seed"] = seed
    return EXIT_OK, out


COMMANDS = {
    "solve": cmd_solve,
    "bound": cmd_bound,
    "distance": cmd_distance,
    "check": cmd_check,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="residuum", description="Soft-CSP solving over residuated preference algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "solve": "exact frontier by bucket elimination or branch-and-bound",
        "bound": "mini-bucket bound with per-bucket diagnostics",
        "distance": "approximation distances for one bucket",
        "check": "run the algebraic law suite on an algebra",
        "generate": "emit a seeded random problem",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--input", metavar="PATH")
        sp.add_argument("--output", metavar="PATH")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--z", type=int)
        sp.add_argument("--order", choices=[NAME_LEX, MIN_DEGREE], default=NAME_LEX)
        sp.add_argument("--ub", choices=["trivial", "mbe"])
        sp.add_argument("--lb", action="append", metavar="JSON", help="lower-bound seed value (repeatable)")
        sp.add_argument("--variable", metavar="NAME")
        sp.add_argument("--algebra", metavar="JSON", help="inline algebra spec")
        if name == "solve":
            sp.add_argument("--algorithm", choices=["be", "dfbb"], default="be")
        if name == "bound":
            sp.add_argument("--reference", metavar="PATH", help="result file whose bound must be dominated")
        if name == "check":
            sp.add_argument("--exhaustive", action="store_true")
            sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    return parser


def _emit(doc, path: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command != "check" and args.command != "generate" and args.algebra is not None:
            raise CliError("usage", f"--algebra is not applicable to {args.command}; the problem file names its algebra")
        status, doc = COMMANDS[args.command](args)
        _emit(doc, args.output)
        return status
    except CliError as exc:
        kind, msg, status = exc.kind, str(exc), exc.status
    except InfeasibleZ as exc:
        kind, msg, status = "infeasible-z", str(exc), EXIT_INVALID
    except ResourceLimit as exc:
        kind, msg, status = "resource", str(exc), EXIT_RESOURCE
    except MemoryError:
        kind, msg, status = "resource", "out of memory", EXIT_RESOURCE
    except ResiduumError as exc:
        kind, msg, status = "error", str(exc), EXIT_INVALID
    except OSError as exc:
        kind, msg, status = "io", str(exc), EXIT_INVALID
    sys.stderr.write(f"residuum: {kind}: {_one_line(msg)}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
