# vcm/models/profile.py
"""
Score profiles, committees and single-issue deterministic instances
"""
from enum import Enum
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

SCORE_TOLERANCE = 1e-9


class ProfileKind(str, Enum):
    APPROVAL = "approval"
    BORDA = "borda"
    GENERAL = "general"


class Alternative(str, Enum):
    """The two alternatives of every issue"""

    ACCEPT = "A"
    REJECT = "R"


class ScoreProfile(BaseModel):
    """n x m matrix of scores u_{i,c} in [0, 1], indexed (voter, candidate)

    In the probabilistic model the same entries are read as representation
    probabilities p_{i,c}.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scores: np.ndarray
    kind: ProfileKind = ProfileKind.GENERAL

    @field_validator("scores", mode="before")
    @classmethod
    def _as_readonly_matrix(cls, value):
        matrix = np.array(value, dtype=float)
        if matrix.ndim != 2:
            raise ValueError(f"scores must be a 2-d matrix, got {matrix.ndim} dimension(s)")
        if matrix.shape[0] == 0 or matrix.shape[1] == 0:
            raise ValueError("profile must have at least one voter and one candidate")
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_kind(self):
        scores = self.scores
        if np.any(scores < -SCORE_TOLERANCE) or np.any(scores > 1 + SCORE_TOLERANCE):
            raise ValueError("every score must lie in [0, 1]")

        if self.kind is ProfileKind.APPROVAL:
            if not np.all((scores == 0.0) | (scores == 1.0)):
                raise ValueError("approval profile entries must be 0 or 1")

        elif self.kind is ProfileKind.BORDA:
            m = scores.shape[1]
            if m > 1:
                expected = np.arange(m) / (m - 1)
                rows = np.sort(scores, axis=1)
                if not np.allclose(rows, expected[None, :], atol=SCORE_TOLERANCE):
                    raise ValueError("Borda rows must be permutations of {0, 1/(m-1), ..., 1}")
        return self

    @property
    def n_voters(self) -> int:
        return int(self.scores.shape[0])

    @property
    def n_candidates(self) -> int:
        return int(self.scores.shape[1])

    def member_scores(self, voter: int, committee: "Committee") -> np.ndarray:
        return self.scores[voter, list(committee.members)]

    def approval_to_probabilities(self, p: float, q: float) -> "ScoreProfile":
        """Representation probabilities of the approval model: p for approved, q otherwise"""
        if self.kind is not ProfileKind.APPROVAL:
            raise ValueError("only approval profiles map onto the two-level approval model")
        return ScoreProfile(scores=q + (p - q) * self.scores, kind=ProfileKind.GENERAL)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], kind: ProfileKind = ProfileKind.GENERAL):
        return cls(scores=np.asarray(rows, dtype=float), kind=kind)


class Committee(BaseModel):
    """A K-subset of candidate indices, stored sorted ascending (0-based)"""

    model_config = ConfigDict(frozen=True)

    members: Tuple[int, ...]

    @field_validator("members", mode="before")
    @classmethod
    def _sorted_distinct(cls, value):
        members = tuple(sorted(int(c) for c in value))
        if not members:
            raise ValueError("a committee needs at least one member")
        if len(set(members)) != len(members):
            raise ValueError(f"committee members must be distinct: {members}")
        if members[0] < 0:
            raise ValueError("candidate indices are non-negative")
        return members

    @property
    def size(self) -> int:
        return len(self.members)

    def validate_for(self, n_candidates: int) -> "Committee":
        if self.members[-1] >= n_candidates:
            raise ValueError(
                f"candidate {self.members[-1] + 1} is out of range for {n_candidates} candidates"
            )
        return self

    def label(self) -> str:
        """1-based, space separated, as printed on the command line"""
        return " ".join(str(c + 1) for c in self.members)

    @classmethod
    def of(cls, *members: int) -> "Committee":
        return cls(members=members)


class DeterministicInstance(BaseModel):
    """Approval profile plus the preferred alternative d_i of every voter"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    approvals: ScoreProfile
    preferred: Tuple[Alternative, ...]

    @model_validator(mode="after")
    def _check_shape(self):
        if self.approvals.kind is not ProfileKind.APPROVAL:
            raise ValueError("deterministic instances need an approval profile")
        if len(self.preferred) != self.approvals.n_voters:
            raise ValueError(
                f"expected {self.approvals.n_voters} preferred alternatives, got {len(self.preferred)}"
            )
        return self

    @property
    def n_voters(self) -> int:
        return self.approvals.n_voters

    @property
    def n_candidates(self) -> int:
        return self.approvals.n_candidates

    @classmethod
    def uniform(cls, approvals: ScoreProfile, alternative: Alternative) -> "DeterministicInstance":
        return cls(approvals=approvals, preferred=(alternative,) * approvals.n_voters)

    @classmethod
    def rejection_oriented(cls, approvals: ScoreProfile) -> "DeterministicInstance":
        return cls.uniform(approvals, Alternative.REJECT)

    @classmethod
    def acceptance_oriented(cls, approvals: ScoreProfile) -> "DeterministicInstance":
        return cls.uniform(approvals, Alternative.ACCEPT)
