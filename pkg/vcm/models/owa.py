# vcm/models/owa.py
"""
Ordered-weighted-average weight vectors and the named OWA rules
"""
import re
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from vcm.exceptions import RangeError, UnknownRuleError

KMEDIAN_PATTERN = re.compile(r"^k?median[:(](\d+)\)?$")


class OwaVector(BaseModel):
    """Weights alpha_1..alpha_K applied to a voter's member scores sorted descending"""

    model_config = ConfigDict(frozen=True)

    weights: Tuple[float, ...]
    name: str = "custom"

    @field_validator("weights", mode="before")
    @classmethod
    def _non_empty(cls, value):
        weights = tuple(float(w) for w in value)
        if not weights:
            raise ValueError("an OWA vector needs at least one weight")
        return weights

    @property
    def size(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def top_k_rule(k: int) -> OwaVector:
    return OwaVector(weights=(1.0,) * k, name="topk")


def cc_rule(k: int) -> OwaVector:
    return OwaVector(weights=(1.0,) + (0.0,) * (k - 1), name="cc")


def pav_rule(k: int) -> OwaVector:
    return OwaVector(weights=tuple(1.0 / j for j in range(1, k + 1)), name="pav")


def kmedian_rule(position: int, k: int) -> OwaVector:
    if not 1 <= position <= k:
        raise RangeError(f"k-median position must lie in 1..{k}, got {position}")
    weights = [0.0] * k
    weights[position - 1] = 1.0
    return OwaVector(weights=tuple(weights), name=f"kmedian:{position}")


def median_rule(k: int) -> OwaVector:
    """The ((K+1)/2)-median rule"""
    return kmedian_rule((k + 1) // 2, k)


def named_rule(name: str, k: int, position: Optional[int] = None) -> OwaVector:
    """topk | cc | pav | kmedian (with `position` or written as kmedian:k / kmedian(k)) | median"""
    if k < 1:
        raise RangeError(f"committee size must be at least 1, got {k}")
    token = name.strip().lower()
    if token in ("topk", "top-k", "kborda"):
        return top_k_rule(k)
    if token in ("cc", "chamberlin-courant"):
        return cc_rule(k)
    if token == "pav":
        return pav_rule(k)
    if token == "median":
        return median_rule(k)
    if token == "kmedian":
        if position is None:
            raise RangeError("kmedian needs a position")
        return kmedian_rule(position, k)
    match = KMEDIAN_PATTERN.match(token)
    if match:
        return kmedian_rule(int(match.group(1)), k)
    raise UnknownRuleError(f"unknown OWA rule '{name}'")
