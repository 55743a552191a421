"""Structured pass/fail results shared by every law check and probe."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PASSED_WITHIN_BUDGET = "PASSED_WITHIN_BUDGET"
    SKIPPED = "SKIPPED"
    ERROR = "ERROR"


class Tag(str, enum.Enum):
    EXACT = "EXACT"
    BUDGET = "BUDGET"
    POLICY = "POLICY"


@dataclass
class CheckReport:
    check_id: str
    status: Status
    tags: tuple[Tag, ...] = (Tag.EXACT,)
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    budget: dict[str, Any] | None = None
    items: list["CheckReport"] = field(default_factory=list)
    op: str = ""
    timing: float | None = None

    def __post_init__(self):
        if self.status is Status.FAIL and self.witness is None:
            raise ValueError(f"FAIL report {self.check_id!r} carries no witness")
        if Tag.BUDGET in self.tags and self.status is Status.PASSED_WITHIN_BUDGET:
            if self.budget is None:
                raise ValueError(f"budget-relative pass {self.check_id!r} carries no budget")

    @property
    def ok(self) -> bool:
        return self.status in (Status.PASS, Status.PASSED_WITHIN_BUDGET, Status.SKIPPED)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list["CheckReport"]:
        out = [] if self.ok else [self]
        for item in self.items:
            out.extend(item.failures())
        return out

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        d: dict[str, Any] = {
            "check_id": self.check_id,
            "op": self.op,
            "status": self.status.value,
            "tags": [t.value for t in self.tags],
            "witness": self.witness,
            "details": self.details,
            "budget": self.budget,
            "items": [i.to_dict(include_timing) for i in self.items],
        }
        if include_timing:
            d["timing"] = self.timing
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CheckReport":
        return cls(
            check_id=d["check_id"],
            op=d.get("op", ""),
            status=Status(d["status"]),
            tags=tuple(Tag(t) for t in d.get("tags", ["EXACT"])),
            witness=d.get("witness"),
            details=d.get("details") or {},
            budget=d.get("budget"),
            items=[cls.from_dict(i) for i in d.get("items", [])],
            timing=d.get("timing"),
        )


def passed(check_id: str, **kw) -> CheckReport:
    return CheckReport(check_id, Status.PASS, **kw)


def failed(check_id: str, witness: Any, **kw) -> CheckReport:
    return CheckReport(check_id, Status.FAIL, witness=witness, **kw)


def combine(check_id: str, items: list[CheckReport], **kw) -> CheckReport:
    """Aggregate sub-reports; order independent apart from the item listing."""
    if any(i.status is Status.ERROR for i in items):
        status = Status.ERROR
    elif any(i.status is Status.FAIL for i in items):
        status = Status.FAIL
    elif any(i.status is Status.PASSED_WITHIN_BUDGET for i in items):
        status = Status.PASSED_WITHIN_BUDGET
    else:
        status = Status.PASS
    tags: list[Tag] = []
    for i in items:
        for t in i.tags:
            if t not in tags:
                tags.append(t)
    tags.sort(key=lambda t: list(Tag).index(t))
    witness = kw.pop("witness", None)
    if status is Status.FAIL and witness is None:
        witness = {
            "failed_items": [i.check_id for i in items if i.status is Status.FAIL]
        }
    budget = kw.pop("budget", None)
    if budget is None:
        for i in items:
            if i.budget is not None:
                budget = i.budget
                break
    return CheckReport(
        check_id, status, tuple(tags) or (Tag.EXACT,), witness=witness, items=items,
        budget=budget, **kw
    )


def laws_report(check_id: str, violations: list[dict[str, Any]], **kw) -> CheckReport:
    """PASS when ``violations`` is empty, otherwise FAIL with the first as witness."""
    if violations:
        return CheckReport(
            check_id,
            Status.FAIL,
            witness=violations[0],
            details={"violations": len(violations), **kw.pop("details", {})},
            **kw,
        )
    return CheckReport(check_id, Status.PASS, **kw)
