# vcm/services/constructors.py
"""
Constructors of optimal rules: OWA vectors synthesized from decision rules,
the Comb full rule, and the optimal full multiwinner rule of the deterministic model
"""
import logging
from functools import partial
from typing import Callable, Iterator, Optional, Sequence

import numpy as np
from scipy.stats import binom

from vcm.config import get_settings
from vcm.exceptions import DecisionRuleError, DimensionError, RangeError
from vcm.models.decision import (
    DecisionRule,
    make_majority,
    make_quota,
    make_random_dictatorship,
    upper_half_start,
)
from vcm.models.owa import OwaVector, median_rule, top_k_rule
from vcm.models.profile import Committee, DeterministicInstance
from vcm.models.reports import Dominance, FullRuleOutcome
from vcm.services.committee_eval import eval_deterministic
from vcm.services.multiwinner import owa_total, owa_winner_exact, top_k_committee
from vcm.utils.combinatorics import iter_committees, lexicographic_argmax

logger = logging.getLogger(__name__)

FullRule = Callable[[DeterministicInstance], FullRuleOutcome]


def approval_level_satisfaction(rule: DecisionRule, k: int, p: float, q: float) -> np.ndarray:
    """P_{S_l} for l = 0..K in the approval model

    l approved members agree with the voter with probability p each, the other K - l
    with probability q each; the agreement count is the convolution of both binomials.
    """
    if rule.k != k:
        raise DimensionError(f"rule is defined for K={rule.k}, requested K={k}")
    if not 0.0 <= q < p <= 1.0:
        raise RangeError(f"approval model needs 0 <= q < p <= 1, got p={p}, q={q}")

    probs = np.asarray(rule.probs, dtype=float)
    levels = np.empty(k + 1)
    for approved in range(k + 1):
        from_approved = binom.pmf(np.arange(approved + 1), approved, p)
        from_others = binom.pmf(np.arange(k - approved + 1), k - approved, q)
        agreeing = np.convolve(from_approved, from_others)
        levels[approved] = agreeing @ probs
    return levels


def alpha_from_decision_rule(
    rule: DecisionRule, k: int, p: float, q: float, include_offset: bool = False
) -> OwaVector:
    """OWA vector whose winners are exactly the optimal committees for `rule`

    alpha_l = P_{S_l} - P_{S_(l-1)}, so a voter with l approved members gets
    P_{S_l} - P_{S_0}; the dropped constant is `alpha_offset`.

    With include_offset the first weight is P_{S_1} itself, the textbook form
    (q + (p-q)/K, (p-q)/K, ...) for random dictatorship. Totals then differ from
    the probabilistic ones by P_{S_0} for each voter with no approved member,
    not by a constant.
    """
    if not rule.symmetric:
        raise DecisionRuleError(f"rule {rule.name} is not symmetric; OWA synthesis needs symmetry")
    levels = approval_level_satisfaction(rule, k, p, q)
    weights = np.diff(levels)
    if include_offset:
        weights[0] += levels[0]
    return OwaVector(weights=tuple(weights), name=f"alpha[{rule.name}]")


def alpha_offset(rule: DecisionRule, k: int, p: float, q: float) -> float:
    """Satisfaction of a voter who approves no member, P_{S_0}"""
    return float(approval_level_satisfaction(rule, k, p, q)[0])


def _outcome(inst: DeterministicInstance, committee: Committee, rule: DecisionRule) -> FullRuleOutcome:
    total = eval_deterministic(inst, committee, rule).total
    return FullRuleOutcome(committee=committee, decision=rule, total=total)


def median_majority(inst: DeterministicInstance, k: int, guard: Optional[int] = None) -> FullRuleOutcome:
    """((K+1)/2)-median followed by majority"""
    committee = owa_winner_exact(median_rule(k), inst.approvals, k, guard)
    return _outcome(inst, committee, make_majority(k))


def topk_random_dictatorship(inst: DeterministicInstance, k: int) -> FullRuleOutcome:
    """Top-K followed by random dictatorship"""
    return _outcome(inst, top_k_committee(inst.approvals, k), make_random_dictatorship(k))


def comb(inst: DeterministicInstance, k: int, guard: Optional[int] = None) -> FullRuleOutcome:
    if k % 2 == 0:
        raise DecisionRuleError(f"Comb needs an odd committee size, got {k}")
    tolerance = get_settings().tie_tolerance

    top = top_k_committee(inst.approvals, k)
    apprv = owa_total(top_k_rule(k), inst.approvals, top)
    median = owa_winner_exact(median_rule(k), inst.approvals, k, guard)
    owa = owa_total(median_rule(k), inst.approvals, median)

    # strict inequality: ties go to the majority branch
    if apprv / k > owa + tolerance:
        logger.debug("Comb picks top-K + random dictatorship (%.6f > %.6f)", apprv / k, owa)
        return FullRuleOutcome(committee=top, decision=make_random_dictatorship(k), total=apprv / k)
    logger.debug("Comb picks median + majority (%.6f >= %.6f)", owa, apprv / k)
    return FullRuleOutcome(committee=median, decision=make_majority(k), total=owa)


def quota_vertices(k: int) -> Iterator[DecisionRule]:
    """Vertices of the symmetric monotone polytope, smallest threshold first, no plateau first"""
    start = upper_half_start(k)
    yield make_quota(k, start, half_plateau=False)
    for threshold in range(start + 1, k + 2):
        yield make_quota(k, threshold, half_plateau=True)


def approval_histogram(inst: DeterministicInstance, committee: Committee) -> np.ndarray:
    """w_l = number of voters approving exactly l members"""
    approved = np.rint(inst.approvals.scores[:, list(committee.members)].sum(axis=1)).astype(int)
    return np.bincount(approved, minlength=committee.size + 1).astype(float)


def optimal_decision_rule_for_committee(inst: DeterministicInstance, committee: Committee) -> DecisionRule:
    """Best symmetric monotone rule for a fixed committee

    After substituting symmetry the objective is linear over a chain
    1/2 <= x_c <= ... <= x_K <= 1, whose vertices are the quota rules.
    """
    weights = approval_histogram(inst, committee)
    rule, value = lexicographic_argmax(
        quota_vertices(committee.size), lambda r: float(weights @ np.asarray(r.probs))
    )
    logger.debug("Best rule for %s: %s (objective %.6f)", committee.members, rule.name, value)
    return rule


def optimal_full_multiwinner(
    inst: DeterministicInstance, k: int, guard: Optional[int] = None
) -> FullRuleOutcome:
    """Tries every committee with its best decision rule"""
    outcomes = (
        _outcome(inst, s, optimal_decision_rule_for_committee(inst, s))
        for s in iter_committees(inst.n_candidates, k, guard)
    )
    best, _ = lexicographic_argmax(outcomes, lambda outcome: outcome.total)
    return best


def median_majority_rule(k: int) -> FullRule:
    return partial(median_majority, k=k)


def topk_random_dictatorship_rule(k: int) -> FullRule:
    return partial(topk_random_dictatorship, k=k)


def comb_rule(k: int) -> FullRule:
    return partial(comb, k=k)


def optimal_full_rule(k: int) -> FullRule:
    return partial(optimal_full_multiwinner, k=k)


def dominance_check(
    rule_a: FullRule, rule_b: FullRule, instances: Sequence[DeterministicInstance]
) -> Dominance:
    """Whether rule_a weakly/strongly dominates rule_b on the given instances"""
    tolerance = get_settings().tie_tolerance
    strict = False
    for inst in instances:
        total_a = rule_a(inst).total
        total_b = rule_b(inst).total
        if total_a < total_b - tolerance:
            return Dominance.NONE
        if total_a > total_b + tolerance:
            strict = True
    return Dominance.STRONG if strict else Dominance.WEAK
