"""Verdicts of identity sweeps."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exact import Scaled, first_nonzero, fmt_array


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    witness: tuple | None = None
    lhs: str | None = None
    rhs: str | None = None
    note: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"{verdict}  {self.name}  ({self.cases} cases)"
        if self.note:
            text += f"  {self.note}"
        if not self.passed and self.witness is not None:
            text += f"\n      witness {self.witness}: lhs={self.lhs} rhs={self.rhs}"
        return text


@dataclass
class Report:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        head = f"== {self.subject}: {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + c.line() for c in self.checks])


def sweep_result(name: str, lhs: Scaled, rhs: Scaled, nquant: int) -> CheckResult:
    """Compare two exact tensors whose first ``nquant`` axes are basis indices.

    The witness is the lexicographically first basis tuple where the
    trailing blocks differ; both sides are recorded at that tuple.
    """
    from .exact import combine

    diff = combine((1, lhs), (-1, rhs))
    cases = int(np.prod(diff.shape[:nquant])) if nquant else 1
    hit = first_nonzero(diff)
    if hit is None:
        return CheckResult(name, True, cases)
    key = hit[:nquant]
    return CheckResult(
        name, False, cases, witness=key,
        lhs=fmt_array(Scaled(lhs.ints[key], lhs.den).to_fractions()),
        rhs=fmt_array(Scaled(rhs.ints[key], rhs.den).to_fractions()),
    )
