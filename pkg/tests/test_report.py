import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relscheme.report import CheckReport, Status, Tag, combine, failed, laws_report, passed

statuses = st.sampled_from(list(Status))


@st.composite
def reports(draw, depth=2):
    status = draw(statuses)
    tags = tuple(draw(st.lists(st.sampled_from(list(Tag)), min_size=1, max_size=2, unique=True)))
    witness = {"x": draw(st.integers(0, 9))} if status is Status.FAIL or draw(st.booleans()) else None
    budget = {"max_module_size": 2} if Tag.BUDGET in tags else None
    items = draw(st.lists(reports(depth - 1), max_size=2)) if depth > 0 else []
    return CheckReport(draw(st.text("abc:_", min_size=1, max_size=6)), status, tags, witness,
                       {"n": draw(st.integers(0, 3))}, budget, items, op="op")


def test_fail_needs_witness():
    with pytest.raises(ValueError):
        CheckReport("c", Status.FAIL)


def test_budget_pass_needs_budget():
    with pytest.raises(ValueError):
        CheckReport("c", Status.PASSED_WITHIN_BUDGET, tags=(Tag.BUDGET,))


def test_skipped_is_ok():
    assert CheckReport("c", Status.SKIPPED).ok
    assert not failed("c", {"w": 1}).ok


def test_laws_report():
    assert laws_report("c", []).status is Status.PASS
    r = laws_report("c", [{"a": 1}, {"b": 2}])
    assert r.witness == {"a": 1} and r.details["violations"] == 2


@given(st.lists(reports(1), max_size=4))
def test_combine_order_independent(items):
    a = combine("top", items)
    b = combine("top", list(reversed(items)))
    assert a.status is b.status and set(a.tags) == set(b.tags)
    if any(i.status is Status.ERROR for i in items):
        assert a.status is Status.ERROR
    elif any(i.status is Status.FAIL for i in items):
        assert a.status is Status.FAIL and a.witness
    assert a.ok == all(i.ok for i in items) or a.status is Status.PASS


@given(reports())
def test_dict_roundtrip(r):
    d = json.loads(json.dumps(r.to_dict()))
    assert CheckReport.from_dict(d).to_dict() == r.to_dict()


def test_failures_flatten():
    inner = failed("inner", {"w": 1})
    top = combine("top", [passed("p"), inner])
    assert [f.check_id for f in top.failures()] == ["top", "inner"]
