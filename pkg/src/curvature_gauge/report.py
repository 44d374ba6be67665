"""Structured verification records shared by the check suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "Quantity", "VerificationReport", "report_to_json"]


@dataclass(frozen=True)
class Quantity:
    """One measured number with its tolerance and provenance.

    provenance is one of "closed-form", "quadrature", "empirical-estimate",
    "count".
    """

    value: float
    tolerance: float | None = None
    provenance: str = "quadrature"

    def to_dict(self) -> dict:
        out = {"value": f"{self.value:.17g}", "provenance": self.provenance}
        if self.tolerance is not None:
            out["tolerance"] = f"{self.tolerance:.17g}"
        return out


@dataclass
class VerificationReport:
    """Outcome of one verification suite.

    status is "pass" or "fail" for asserted checks and "reported-only" for
    quantities that are recorded without being gating (e.g. comparisons
    against empirical upper estimates of existential constants).
    """

    suite: str
    inputs: dict = field(default_factory=dict)
    quantities: dict[str, Quantity] = field(default_factory=dict)
    status: str = "pass"
    notes: list[str] = field(default_factory=list)
    wall_time_s: float | None = None

    def add(self, name: str, value: float, tolerance: float | None = None,
            provenance: str = "quadrature") -> None:
        self.quantities[name] = Quantity(float(value), tolerance, provenance)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "inputs": self.inputs,
            "quantities": {k: q.to_dict() for k, q in sorted(self.quantities.items())},
            "status": self.status,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.wall_time_s is not None:
            out["wall_time_s"] = self.wall_time_s
        return out


def report_to_json(report_dict: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, LF line endings.

    Two runs with identical inputs produce byte-identical output apart from
    any wall_time_s fields.
    """
    return json.dumps(report_dict, sort_keys=True, indent=2) + "\n"
