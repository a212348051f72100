# vcm/models/reports.py
"""
Result types of committee evaluation and full multiwinner rules
"""
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from vcm.models.decision import DecisionRule
from vcm.models.profile import Committee

REPORT_TOLERANCE = 1e-9


class EvaluationModel(str, Enum):
    DETERMINISTIC = "det"
    PROBABILISTIC = "prob"


class Dominance(str, Enum):
    WEAK = "weak"
    STRONG = "strong"
    NONE = "none"


class EvalReport(BaseModel):
    """Ultimate satisfaction of every voter and their utilitarian sum"""

    model_config = ConfigDict(frozen=True)

    per_voter: Tuple[float, ...]
    total: float

    @model_validator(mode="after")
    def _check_total(self):
        if any(not -REPORT_TOLERANCE <= s <= 1 + REPORT_TOLERANCE for s in self.per_voter):
            raise ValueError("per-voter satisfaction must lie in [0, 1]")
        if abs(sum(self.per_voter) - self.total) > REPORT_TOLERANCE * max(1, len(self.per_voter)):
            raise ValueError("total must equal the sum of per-voter satisfactions")
        return self

    @classmethod
    def from_values(cls, values) -> "EvalReport":
        per_voter = tuple(float(v) for v in values)
        return cls(per_voter=per_voter, total=float(sum(per_voter)))


class FullRuleOutcome(BaseModel):
    """The (committee, decision rule) pair a full multiwinner rule returns"""

    model_config = ConfigDict(frozen=True)

    committee: Committee
    decision: DecisionRule
    total: float
