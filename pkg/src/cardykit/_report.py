"""Verification reports: ordered check results with pass/fail/undecided verdicts."""

from __future__ import annotations

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"


class Check:
    __slots__ = ("check_id", "verdict", "detail")

    def __init__(self, check_id: str, verdict: str, detail: str = "") -> None:
        self.check_id = check_id
        self.verdict = verdict
        self.detail = detail

    def __repr__(self):
        return f"Check({self.check_id!r}, {self.verdict!r}, {self.detail!r})"


class Report:
    """Deterministic, ordered list of checks.  ok() iff nothing failed."""

    def __init__(self, title: str = "") -> None:
        self.title = title
        self.checks: list[Check] = []

    def add(self, check_id: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(check_id, PASS if ok else FAIL, detail))

    def add_verdict(self, check_id: str, verdict: str, detail: str = "") -> None:
        self.checks.append(Check(check_id, verdict, detail))

    def merge(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def ok(self) -> bool:
        return all(c.verdict != FAIL for c in self.checks)

    def decided(self) -> bool:
        return all(c.verdict != UNDECIDED for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    def exit_code(self) -> int:
        if any(c.verdict == FAIL for c in self.checks):
            return 1
        if any(c.verdict == UNDECIDED for c in self.checks):
            return 3
        return 0

    def porcelain(self) -> str:
        return "\n".join(f"{c.check_id}\t{c.verdict}\t{c.detail}" for c in self.checks)

    def pretty(self) -> str:
        lines = [f"== {self.title} ==" if self.title else "== report =="]
        width = max((len(c.check_id) for c in self.checks), default=8)
        for c in self.checks:
            lines.append(f"  {c.check_id:<{width}}  {c.verdict.upper():<9} {c.detail}")
        n_fail = len(self.failures())
        lines.append(f"  -- {len(self.checks)} checks, {n_fail} failed --")
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({self.title!r}, ok={self.ok()})"
