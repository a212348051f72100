# vcm/models/experiment.py
"""
Experiment configuration and per-voter result records
"""
import json
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from vcm.config import get_settings
from vcm.exceptions import ExperimentConfigError


class ExperimentMode(str, Enum):
    LINE = "line"
    PREFLIB = "preflib"


class CommitteeSpec(str, Enum):
    TOPK = "topk"
    SEQ_PAV = "seq-pav"
    SEQ_CC = "seq-cc"
    SINGLE_CENTRIST = "single-centrist"
    DIRECT_DEMOCRACY = "direct-democracy"


class DecisionSpec(str, Enum):
    MAJORITY = "majority"
    RANDOM_DICTATORSHIP = "random-dictatorship"


DEFAULT_P_RANGES = {
    ExperimentMode.LINE: (1.5, 2.5),
    ExperimentMode.PREFLIB: (0.0, 3.0),
}

DEFAULT_TRIALS = {
    ExperimentMode.LINE: 200,
    ExperimentMode.PREFLIB: 10,
}

INSIGNIFICANCE_BAND = (0.4, 0.6)


class ExperimentConfig(BaseModel):
    """All parameters of one simulation run; issues are one per voter (r = n_voters)"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: ExperimentMode = ExperimentMode.LINE
    n_voters: int = Field(default=100, ge=1)
    n_candidates: int = Field(default=100, ge=1)
    committee_size: int = Field(default=11, ge=1)
    n_trials: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    p_range: Optional[Tuple[float, float]] = None
    insignificance_band: Optional[Tuple[float, float]] = None
    rules: List[CommitteeSpec] = Field(default_factory=lambda: list(CommitteeSpec))
    decision_rules: List[DecisionSpec] = Field(default_factory=lambda: list(DecisionSpec))
    threads: int = Field(default_factory=lambda: get_settings().threads, ge=1)

    @model_validator(mode="after")
    def _fill_and_check(self):
        if self.n_trials is None:
            object.__setattr__(self, "n_trials", DEFAULT_TRIALS[self.mode])
        if self.p_range is None:
            object.__setattr__(self, "p_range", DEFAULT_P_RANGES[self.mode])
        low, high = self.p_range
        if not 0 <= low <= high:
            raise ValueError(f"p_range must be a non-negative interval, got {self.p_range}")
        if self.insignificance_band is not None:
            band_low, band_high = self.insignificance_band
            if not 0 < band_low <= band_high:
                raise ValueError("insignificance band must lie strictly above 0")
        if DecisionSpec.MAJORITY in self.decision_rules and self.committee_size % 2 == 0:
            raise ValueError("committee_size must be odd when majority is listed")
        if self.mode is ExperimentMode.LINE and self.committee_size > self.n_candidates:
            raise ValueError("committee_size cannot exceed n_candidates")
        if not self.rules or not self.decision_rules:
            raise ValueError("at least one committee rule and one decision rule are required")
        return self

    @property
    def n_issues(self) -> int:
        return self.n_voters

    @classmethod
    def from_file(cls, path: Path, **overrides) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ExperimentConfigError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e
        if not isinstance(data, dict):
            raise ExperimentConfigError(f"{path}: expected a JSON object")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)


class TrialRecord(BaseModel):
    """Mean ultimate satisfaction of one voter for one (committee rule, decision rule) pair

    x is the voter's mean position in line mode and the sorted voter fraction in
    PrefLib mode.
    """

    model_config = ConfigDict(frozen=True)

    x: float
    rule: CommitteeSpec
    decision: DecisionSpec
    satisfaction: float = Field(ge=0.0, le=1.0)
