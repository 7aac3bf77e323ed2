"""Audit report containers with lossless dict round-tripping.

Margins follow one convention everywhere: a check passes iff
margin >= -tolerance.  Inequality checks record the raw slack
(rhs - lhs), equality checks record the negated absolute deviation,
so worst_margin is always the minimum over cases.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AuditEntry:
    case: str
    margin: float
    tolerance: float
    passed: bool
    functional: str = ""
    dim: int = 0

    @classmethod
    def check(
        cls,
        case: str,
        margin: float,
        tolerance: float,
        functional: str = "",
        dim: int = 0,
    ) -> "AuditEntry":
        return cls(
            case=case,
            margin=float(margin),
            tolerance=float(tolerance),
            passed=bool(margin >= -tolerance),
            functional=functional,
            dim=int(dim),
        )

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "functional": self.functional,
            "dim": self.dim,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AuditEntry":
        return cls(
            case=data["case"],
            margin=float(data["margin"]),
            tolerance=float(data["tolerance"]),
            passed=bool(data["passed"]),
            functional=data.get("functional", ""),
            dim=int(data.get("dim", 0)),
        )


@dataclass(frozen=True)
class AuditReport:
    """Outcome of one audit suite run; deterministic for a given seed."""

    suite: str
    trials: int
    violations: int
    worst_margin: float
    seed: int
    tolerance: float
    cases: tuple = ()

    def summary_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "cases": len(self.cases),
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "cases": [c.to_dict() for c in self.cases],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AuditReport":
        return cls(
            suite=data["suite"],
            trials=int(data["trials"]),
            violations=int(data["violations"]),
            worst_margin=float(data["worst_margin"]),
            seed=int(data["seed"]),
            tolerance=float(data["tolerance"]),
            cases=tuple(AuditEntry.from_dict(c) for c in data["cases"]),
        )


def build_report(suite: str, trials: int, seed: int, tolerance: float, entries) -> AuditReport:
    entries = tuple(entries)
    violations = sum(1 for e in entries if not e.passed)
    worst = min((e.margin for e in entries), default=0.0)
    return AuditReport(
        suite=suite,
        trials=int(trials),
        violations=int(violations),
        worst_margin=float(worst),
        seed=int(seed),
        tolerance=float(tolerance),
        cases=entries,
    )
