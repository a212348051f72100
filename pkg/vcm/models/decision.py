# vcm/models/decision.py
"""
Randomized committee decision rules stored as explicit K+1 probability tables
"""
import math
from fractions import Fraction
from typing import Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from vcm.exceptions import DecisionRuleError, RangeError
from vcm.models.profile import Alternative

SYMMETRY_TOLERANCE = 1e-12


class DecisionRule(BaseModel):
    """probs[a] = probability the committee accepts when a of its K members vote Accept"""

    model_config = ConfigDict(frozen=True)

    k: int
    probs: Tuple[float, ...]
    symmetric: bool
    name: str = "custom"

    @model_validator(mode="after")
    def _check_table(self):
        if self.k < 1:
            raise ValueError("committee size must be at least 1")
        if len(self.probs) != self.k + 1:
            raise ValueError(f"expected {self.k + 1} probabilities, got {len(self.probs)}")
        if any(not 0.0 <= p <= 1.0 for p in self.probs):
            raise ValueError("decision probabilities must lie in [0, 1]")
        if self.symmetric and not self.is_symmetric_table():
            raise ValueError(f"rule {self.name} is flagged symmetric but probs[a] + probs[K-a] != 1")
        return self

    def is_symmetric_table(self) -> bool:
        k = self.k
        return all(
            abs(self.probs[a] + self.probs[k - a] - 1.0) <= SYMMETRY_TOLERANCE for a in range(k + 1)
        )

    def is_monotone(self) -> bool:
        return all(self.probs[a + 1] >= self.probs[a] for a in range(self.k))

    def satisfaction(self, agreeing: int, preferred: Alternative = Alternative.ACCEPT) -> float:
        """Probability of deciding as a voter prefers when `agreeing` members vote with them"""
        if preferred is Alternative.ACCEPT:
            return decision_prob(self, agreeing)
        return 1.0 - decision_prob(self, self.k - agreeing)


def decision_prob(rule: DecisionRule, accepts: int) -> float:
    if not 0 <= accepts <= rule.k:
        raise RangeError(f"accept count {accepts} outside 0..{rule.k}")
    return rule.probs[accepts]


def make_majority(k: int) -> DecisionRule:
    if k < 1 or k % 2 == 0:
        raise DecisionRuleError(f"majority is only defined for odd committee sizes, got {k}")
    threshold = (k + 1) // 2
    probs = tuple(1.0 if a >= threshold else 0.0 for a in range(k + 1))
    return DecisionRule(k=k, probs=probs, symmetric=True, name="majority")


def make_random_dictatorship(k: int) -> DecisionRule:
    if k < 1:
        raise DecisionRuleError(f"committee size must be at least 1, got {k}")
    # a/K and (K-a)/K are exact complements once rounded from Fractions
    probs = tuple(float(Fraction(a, k)) for a in range(k + 1))
    return DecisionRule(k=k, probs=probs, symmetric=True, name="random-dictatorship")


def make_unanimity(k: int) -> DecisionRule:
    if k < 1:
        raise DecisionRuleError(f"committee size must be at least 1, got {k}")
    probs = tuple(1.0 if a == k else 0.0 for a in range(k + 1))
    # K = 1 happens to be symmetric, but unanimity is never treated as such
    return DecisionRule(k=k, probs=probs, symmetric=False, name="unanimity")


def upper_half_start(k: int) -> int:
    """Smallest accept count strictly above K/2, i.e. ceil((K+1)/2)"""
    return k // 2 + 1


def make_quota(k: int, threshold: int, half_plateau: bool) -> DecisionRule:
    """Symmetric monotone rule: accept for a >= threshold, 1/2 on the plateau below it

    Without a plateau the threshold has to sit at ceil((K+1)/2); the only forced 1/2
    is then the centre a = K/2 of an even committee.
    """
    if k < 1:
        raise DecisionRuleError(f"committee size must be at least 1, got {k}")
    start = upper_half_start(k)
    if not (2 * threshold > k and threshold <= k + 1):
        raise DecisionRuleError(f"quota threshold must satisfy K/2 < t <= K+1, got t={threshold}, K={k}")
    if not half_plateau and threshold != start:
        raise DecisionRuleError(
            f"a quota without plateau needs t = {start} for K={k}; use half_plateau for t={threshold}"
        )

    probs = [0.0] * (k + 1)
    for a in range(start, k + 1):
        probs[a] = 1.0 if a >= threshold else 0.5
    if k % 2 == 0:
        probs[k // 2] = 0.5
    for a in range(0, math.ceil(k / 2)):
        probs[a] = 1.0 - probs[k - a]

    name = f"quota:{threshold}" + ("+half" if half_plateau and threshold > start else "")
    return DecisionRule(k=k, probs=tuple(probs), symmetric=True, name=name)


def majority_or_tie_coin(k: int) -> DecisionRule:
    """Majority for odd K; for even K ties are settled by a fair coin"""
    if k % 2 == 1:
        return make_majority(k)
    return make_quota(k, upper_half_start(k), half_plateau=False).model_copy(update={"name": "majority"})


def make_custom(probs: Sequence[float], symmetric: bool, name: str = "custom") -> DecisionRule:
    return DecisionRule(k=len(probs) - 1, probs=tuple(float(p) for p in probs), symmetric=symmetric, name=name)


def parse_decision_spec(spec: str, k: int) -> DecisionRule:
    """majority | rd | random-dictatorship | unanimity | quota:t"""
    token = spec.strip().lower()
    if token == "majority":
        return make_majority(k)
    if token in ("rd", "random-dictatorship"):
        return make_random_dictatorship(k)
    if token == "unanimity":
        return make_unanimity(k)
    if token.startswith("quota:"):
        try:
            threshold = int(token.split(":", 1)[1])
        except ValueError as e:
            raise DecisionRuleError(f"invalid quota threshold in '{spec}'") from e
        return make_quota(k, threshold, half_plateau=threshold > upper_half_start(k))
    raise DecisionRuleError(f"unknown decision rule '{spec}'")
