# vcm/models/rankings.py
"""
Strict complete rankings with multiplicities, as read from PrefLib files
"""
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class RankProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_candidates: int
    rankings: Tuple[Tuple[int, ...], ...]
    multiplicities: Tuple[int, ...]
    candidate_names: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def _check_orders(self):
        if len(self.rankings) != len(self.multiplicities):
            raise ValueError("every ranking needs a multiplicity")
        full = set(range(self.n_candidates))
        for ranking in self.rankings:
            if len(ranking) != self.n_candidates or set(ranking) != full:
                raise ValueError(f"ranking {ranking} is not a permutation of 0..{self.n_candidates - 1}")
        if any(count < 1 for count in self.multiplicities):
            raise ValueError("multiplicities must be at least 1")
        if self.candidate_names is not None and len(self.candidate_names) != self.n_candidates:
            raise ValueError("one name per candidate expected")
        return self

    @property
    def n_voters(self) -> int:
        return int(sum(self.multiplicities))

    def unique_orders(self) -> np.ndarray:
        return np.asarray(self.rankings, dtype=int).reshape(len(self.rankings), self.n_candidates)

    def order_of_voter(self) -> np.ndarray:
        """Index into `rankings` for every expanded voter"""
        return np.repeat(np.arange(len(self.rankings)), self.multiplicities)

    def expanded(self) -> np.ndarray:
        """One row per voter, most-preferred candidate first"""
        return self.unique_orders()[self.order_of_voter()]
