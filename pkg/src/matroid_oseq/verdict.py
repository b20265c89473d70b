from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .orderideals import OrderIdeal

UNDECIDED = "undecided"


@dataclass(frozen=True)
class Verdict:
    """Three-valued outcome of a check.

    ``outcome`` is True (pass / pure), False (fail / not pure) or None when a
    resource cap stopped the check.  ``decided_by`` names the method that
    settled it.
    """

    outcome: bool | None
    decided_by: str
    witness: OrderIdeal | None = None
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome is True

    @property
    def undecided(self) -> bool:
        return self.outcome is None

    def to_json(self, label: str = "outcome") -> dict[str, Any]:
        out: dict[str, Any] = {
            label: UNDECIDED if self.outcome is None else self.outcome,
            "decided_by": self.decided_by,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out
