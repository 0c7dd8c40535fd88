"""Structured outcomes for law and diagram checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Optional

EXHAUSTIVE = "exhaustive"
SAMPLE = "sample"

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one law/diagram check on one instance.

    ``law`` states the equations that were checked, so a record is
    self-describing.  ``witness`` carries the first counterexample (or
    the skip reason); ``details`` holds derived structural facts.
    Reports never contain wall-clock data, so identical runs serialize
    to identical bytes.
    """

    check: str
    law: str
    verdict: str
    mode: str = EXHAUSTIVE
    points: int = 0
    instance: str = ""
    seed: Optional[int] = None
    witness: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def with_instance(self, name: str) -> "VerificationReport":
        return replace(self, instance=name)

    def to_record(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "check": self.check,
            "law": self.law,
            "verdict": self.verdict,
            "mode": self.mode,
            "points": self.points,
            "seed": self.seed,
            "witness": self.witness,
            "details": self.details,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))


def masks_to_lists(mask: int) -> list[int]:
    """Render a subset mask as its sorted index list (for witnesses)."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out
