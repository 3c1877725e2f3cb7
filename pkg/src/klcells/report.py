"""Structured pass/fail reports shared by the verification operations.

A report lists named property checks; each check carries an instance count
and the failures, where a failure names the offending instance and shows
both sides of the violated identity.  Failures are content, not exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Failure:
    instance: str
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"instance": self.instance, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class PropertyCheck:
    name: str
    instances: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, k: int = 1):
        self.instances += k

    def skip(self, k: int = 1):
        self.skipped += k

    def fail(self, instance: str, lhs, rhs):
        self.failures.append(Failure(instance, str(lhs), str(rhs)))

    def to_json(self) -> dict:
        out = {
            "property": self.name,
            "instances": self.instances,
            "failures": [f.to_json() for f in self.failures],
            "passed": self.passed,
        }
        if self.skipped:
            out["skipped"] = self.skipped
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def check(self, name: str) -> PropertyCheck:
        c = PropertyCheck(name)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def render(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            extra = f" (skipped {c.skipped})" if c.skipped else ""
            lines.append(f"  [{mark}] {c.name}: {c.instances} instances{extra}")
            for f in c.failures[:20]:
                lines.append(f"         at {f.instance}: {f.lhs} != {f.rhs}")
            if len(c.failures) > 20:
                lines.append(f"         ... and {len(c.failures) - 20} more failures")
        return "\n".join(lines)
