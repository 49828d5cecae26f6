"""Structured verification reports.

Every inequality check produces a CheckReport whose pass verdict can be
recomputed from the stored fields: lhs, rhs and errorBudget are kept exactly
(rationals serialize as "p/q" strings), and the comparison relation is
recorded in parameters["relation"].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .rationals import format_exact

Scalar = Union[int, float, Fraction]


def scalar_json(value):
    if isinstance(value, bool) or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, Fraction):
        return format_exact(value)
    if isinstance(value, (list, tuple)):
        return [scalar_json(v) for v in value]
    return value


def safe_ratio(lhs: Scalar, rhs: Scalar) -> float:
    """lhs / rhs as a float, with 0/0 = 1 and x/0 = inf for x > 0."""
    if rhs == 0:
        return float("inf") if lhs > 0 else 1.0
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        return float(lhs / rhs)
    return float(lhs) / float(rhs)


@dataclass
class CheckReport:
    name: str
    lhs: Scalar
    rhs: Scalar
    error_budget: Scalar
    passed: bool
    inputs: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return safe_ratio(self.lhs, self.rhs)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": scalar_json(self.lhs),
            "rhs": scalar_json(self.rhs),
            "ratio": self.ratio,
            "errorBudget": scalar_json(self.error_budget),
            "pass": self.passed,
            "inputs": {k: scalar_json(v) for k, v in sorted(self.inputs.items())},
            "parameters": {k: scalar_json(v) for k, v in sorted(self.parameters.items())},
            "notes": list(self.notes),
        }


def le_report(name: str, lhs: Scalar, rhs: Scalar, error_budget: Scalar = Fraction(0),
              inputs=None, parameters=None, notes=None) -> CheckReport:
    """Report for an inequality lhs <= rhs + errorBudget."""
    params = dict(parameters or {})
    params.setdefault("relation", "le")
    passed = lhs <= rhs + error_budget
    return CheckReport(name=name, lhs=lhs, rhs=rhs, error_budget=error_budget,
                       passed=bool(passed), inputs=dict(inputs or {}),
                       parameters=params, notes=list(notes or []))


def eq_report(name: str, lhs: Scalar, rhs: Scalar,
              inputs=None, parameters=None, notes=None) -> CheckReport:
    """Report for an exact equality lhs == rhs (errorBudget 0)."""
    params = dict(parameters or {})
    params.setdefault("relation", "eq")
    return CheckReport(name=name, lhs=lhs, rhs=rhs, error_budget=Fraction(0),
                       passed=bool(lhs == rhs), inputs=dict(inputs or {}),
                       parameters=params, notes=list(notes or []))
