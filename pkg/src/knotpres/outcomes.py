"""Three-valued results for decision procedures and semi-decisions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class CheckOutcome:
    """yes / no / unknown, with optional evidence and budget accounting."""

    verdict: str
    evidence: Optional[dict] = None
    budget_used: Optional[int] = None

    def __post_init__(self):
        if self.verdict not in ("yes", "no", "unknown"):
            raise ValueError(f"bad verdict {self.verdict!r}")

    @classmethod
    def yes(
        cls, evidence: Optional[dict] = None, budget_used: Optional[int] = None
    ) -> "CheckOutcome":
        return cls("yes", evidence, budget_used)

    @classmethod
    def no(
        cls, evidence: Optional[dict] = None, budget_used: Optional[int] = None
    ) -> "CheckOutcome":
        return cls("no", evidence, budget_used)

    @classmethod
    def unknown(
        cls, budget_used: Optional[int] = None, evidence: Optional[dict] = None
    ) -> "CheckOutcome":
        return cls("unknown", evidence, budget_used)

    @property
    def is_yes(self) -> bool:
        return self.verdict == "yes"

    @property
    def is_no(self) -> bool:
        return self.verdict == "no"

    @property
    def is_unknown(self) -> bool:
        return self.verdict == "unknown"

    def to_json_dict(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.evidence is not None:
            out["evidence"] = self.evidence
        if self.budget_used is not None:
            out["budget_used"] = self.budget_used
        return out
