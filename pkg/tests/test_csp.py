import json

import pytest

from residuum import csp
from residuum.csp import Constraint, constant, evaluate
from residuum.errors import DomainError, MissingAssignment, ProblemError
from residuum.instances import INF, Tropical

T = Tropical()


def unary(cid, v, values, dom=("a", "b")):
    return Constraint(cid, (v,), (dom,), tuple(values))


def test_evaluate_lookup():
    c = unary("c", "v", [3, 5])
    assert evaluate(c, {"v": "a"}) == 3


def test_evaluate_row_major():
    c = Constraint("c", ("v1", "v2"), (("p", "q"), ("p", "q")), ("w", "x", "y", "z"))
    assert evaluate(c, {"v1": "q", "v2": "p"}) == "y"


def test_evaluate_errors():
    c = unary("c", "v", [3, 5])
    with pytest.raises(MissingAssignment):
        evaluate(c, {})
    with pytest.raises(DomainError):
        evaluate(c, {"v": "zz"})


def test_table_size_checked():
    with pytest.raises(ValueError):
        Constraint("c", ("v",), (("a", "b"),), (1,))


def test_combine_examples():
    c = unary("c", "v", [3, 5])
    assert csp.combine_constraints(T, c, constant("one", 0)).table == c.table
    assert csp.combine_constraints(T, c, unary("d", "v", [2, 0])).table == (5, 5)
    pair = csp.combine_constraints(T, c, unary("d", "w", [10, 20]))
    assert pair.support == ("v", "w")
    assert pair.table == (13, 23, 15, 25)


def test_residuate_examples():
    c = unary("c", "v", [7, 2])
    assert csp.residuate_constraints(T, c, c).table == (0, 0)
    assert csp.residuate_constraints(T, c, constant("bot", INF)).table == (0, 0)
    assert csp.residuate_constraints(T, c, unary("d", "v", [3, 5])).table == (4, 0)


def test_project_examples():
    assert csp.project(T, unary("c", "v", [3, 5]), "v").table == (3,)
    c = Constraint("c", ("v1", "v2"), (("a", "b"), ("a", "b")), (5, 0, 1, 2))
    g = csp.project(T, c, "v2")
    assert g.support == ("v1",) and g.table == (0, 1)
    with pytest.raises(DomainError):
        csp.project(T, c, "v9")


def test_combine_all_empty_is_identity():
    assert csp.combine_all(T, []).table == (0,)


def test_condition():
    c = Constraint("c", ("v1", "v2"), (("a", "b"), ("a", "b")), (5, 0, 1, 2))
    r = csp.condition(c, {"v1": "b"})
    assert r.support == ("v2",) and r.table == (1, 2)


# --- parsing ------------------------------------------------------------------------


def _doc(**over):
    doc = {
        "algebra": {"kind": "tropical"},
        "variables": [{"name": "v", "domain": ["a", "b"]}],
        "constraints": [{"id": "c1", "scope": ["v"], "table": [{"assign": ["a"], "value": 3}, {"assign": ["b"], "value": "inf"}]}],
    }
    doc.update(over)
    return doc


def test_minimal_document():
    p = csp.problem_from_dict(_doc())
    assert p.variables == ("v",)
    assert p.constraints[0].table == (3, INF)


def test_roundtrip_through_json():
    p = csp.problem_from_dict(_doc())
    q = csp.parse_problem(json.dumps(p.to_json()))
    assert q.constraints == p.constraints and q.domains == p.domains


def _diags(doc):
    with pytest.raises(ProblemError) as info:
        csp.problem_from_dict(doc)
    return " | ".join(info.value.diagnostics)


def test_unknown_scope_variable():
    d = _doc(constraints=[{"id": "c1", "scope": ["w"], "table": []}])
    assert "unknown variable 'w'" in _diags(d)


def test_missing_entries_named():
    d = _doc(constraints=[{"id": "c7", "scope": ["v"], "table": [{"assign": ["a"], "value": 1}]}])
    assert "constraint c7" in _diags(d)


def test_default_fills_gaps():
    d = _doc(constraints=[{"id": "c1", "scope": ["v"], "default": 4, "table": [{"assign": ["a"], "value": 1}]}])
    assert csp.problem_from_dict(d).constraints[0].table == (1, 4)


def test_duplicate_rows_rejected():
    rows = [{"assign": ["a"], "value": 1}, {"assign": ["a"], "value": 2}, {"assign": ["b"], "value": 2}]
    assert "duplicate" in _diags(_doc(constraints=[{"id": "c1", "scope": ["v"], "table": rows}]))


def test_bad_value_rejected():
    rows = [{"assign": ["a"], "value": -3}, {"assign": ["b"], "value": 2}]
    assert "c1" in _diags(_doc(constraints=[{"id": "c1", "scope": ["v"], "table": rows}]))


def test_uncovered_variable_and_empty_domain():
    d = _doc(variables=[{"name": "v", "domain": ["a", "b"]}, {"name": "w", "domain": []}])
    text = _diags(d)
    assert "w: empty domain" in text and "w: not in the scope" in text


def test_bad_algebra():
    assert "algebra" in _diags(_doc(algebra={"kind": "mystery"}))


def test_malformed_json():
    with pytest.raises(ProblemError):
        csp.parse_problem("{not json")
