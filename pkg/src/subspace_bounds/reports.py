"""Shared bound-report record and its stable JSON serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, getcontext
from fractions import Fraction

__all__ = ["BoundReport", "fraction_decimal"]

getcontext().prec = 30


def fraction_decimal(value: Fraction | float, digits: int = 17) -> str:
    """Deterministic decimal rendering; exact integers print without a point."""
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    dec = Decimal(value.numerator) / Decimal(value.denominator)
    return str(+dec.normalize())


@dataclass
class BoundReport:
    """One bound computation, in the schema emitted by the CLI.

    ``raw_value`` always parses to a number >= ``floored_bound``.
    ``exact_value`` carries the rational optimum when the solve was exact;
    it is not serialized.
    """

    q: int
    n: int
    d: int
    metric: str
    method: str
    raw_value: str
    floored_bound: int
    status: str
    gap: float
    cuts_applied: list[str] = field(default_factory=list)
    wall_ms: float = 0.0
    k: int | None = None
    exact_value: Fraction | None = field(default=None, repr=False)

    def to_json_dict(self) -> dict:
        params = {"q": self.q, "n": self.n}
        if self.k is not None:
            params["k"] = self.k
        params["d"] = self.d
        params["metric"] = self.metric
        return {
            "params": params,
            "method": self.method,
            "raw_value": self.raw_value,
            "floored_bound": self.floored_bound,
            "status": self.status,
            "gap": self.gap,
            "cuts_applied": list(self.cuts_applied),
            "wall_ms": self.wall_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))
