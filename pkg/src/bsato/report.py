"""Pass/fail reports shared by the verification drivers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = None  # textual polynomial/operator explaining a failure

    def line(self):
        status = "pass" if self.passed else "fail"
        if self.witness and not self.passed:
            return "%s: %s  [%s]" % (self.name, status, self.witness)
        return "%s: %s" % (self.name, status)


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, witness=None):
        self.checks.append(Check(name, bool(passed), witness))
        return passed

    def extend(self, other: "Report", prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        return [c.line() for c in self.checks]

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        return "<Report %s: %s (%d checks)>" % (self.title, status,
                                                len(self.checks))
