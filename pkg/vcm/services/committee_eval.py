# vcm/services/committee_eval.py
"""
Ultimate satisfaction of voters from a committee that decides with a given rule
"""
import itertools
import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from vcm.config import get_settings
from vcm.exceptions import DimensionError, GuardExceededError
from vcm.models.decision import DecisionRule
from vcm.models.profile import (
    Alternative,
    Committee,
    DeterministicInstance,
    ProfileKind,
    ScoreProfile,
)
from vcm.models.reports import EvalReport, EvaluationModel
from vcm.utils.combinatorics import iter_committees, lexicographic_argmax

logger = logging.getLogger(__name__)

Source = Union[ScoreProfile, DeterministicInstance]


def _check_sizes(rule: DecisionRule, committee: Committee, n_candidates: int) -> None:
    if rule.k != committee.size:
        raise DimensionError(f"rule is defined for K={rule.k}, committee has {committee.size} members")
    try:
        committee.validate_for(n_candidates)
    except ValueError as e:
        raise DimensionError(str(e)) from e


def _satisfaction_table(rule: DecisionRule) -> np.ndarray:
    """Row 0: voters preferring Accept, row 1: voters preferring Reject; column = agreeing members"""
    probs = np.asarray(rule.probs, dtype=float)
    return np.vstack([probs, 1.0 - probs[::-1]])


def _preference_rows(preferred: Optional[Sequence[Alternative]], n_voters: int) -> np.ndarray:
    if preferred is None:
        return np.zeros(n_voters, dtype=int)
    return np.array([0 if alt is Alternative.ACCEPT else 1 for alt in preferred], dtype=int)


def eval_deterministic(inst: DeterministicInstance, committee: Committee, rule: DecisionRule) -> EvalReport:
    """P_S(i) = Rdec(number of approved members), read from the voter's side of the issue"""
    _check_sizes(rule, committee, inst.n_candidates)
    approved = np.rint(inst.approvals.scores[:, list(committee.members)].sum(axis=1)).astype(int)
    table = _satisfaction_table(rule)
    rows = _preference_rows(inst.preferred, inst.n_voters)
    return EvalReport.from_values(table[rows, approved])


def agreement_distribution(probabilities: Sequence[float]) -> np.ndarray:
    """A[K][l]: probability that exactly l of the members vote as the voter prefers"""
    dist = np.array([1.0])
    for p in probabilities:
        nxt = np.zeros(dist.size + 1)
        nxt[:-1] = dist * (1.0 - p)
        nxt[1:] += dist * p
        dist = nxt
    return dist


def eval_probabilistic_dp(
    profile: ScoreProfile,
    voter: int,
    committee: Committee,
    rule: DecisionRule,
    preferred: Alternative = Alternative.ACCEPT,
) -> float:
    _check_sizes(rule, committee, profile.n_candidates)
    dist = agreement_distribution(profile.member_scores(voter, committee))
    table = _satisfaction_table(rule)[0 if preferred is Alternative.ACCEPT else 1]
    # sums from l = 0 so rules with probs[0] > 0 are evaluated too
    return float(dist @ table)


def eval_probabilistic_bruteforce(
    profile: ScoreProfile,
    voter: int,
    committee: Committee,
    rule: DecisionRule,
    preferred: Alternative = Alternative.ACCEPT,
    guard: Optional[int] = None,
) -> float:
    """Sum over all 2^K vote patterns of P_S(v) * P_Rdec(i | v)"""
    _check_sizes(rule, committee, profile.n_candidates)
    guard = get_settings().vote_pattern_guard if guard is None else guard
    if committee.size > guard:
        raise GuardExceededError("committee size for vote-pattern enumeration", committee.size, guard)

    p = profile.member_scores(voter, committee)
    total = 0.0
    for pattern in itertools.product((True, False), repeat=committee.size):
        weight = 1.0
        for agrees, p_c in zip(pattern, p):
            weight *= p_c if agrees else 1.0 - p_c
        total += weight * rule.satisfaction(sum(pattern), preferred)
    return total


def evaluate_probabilistic(
    profile: ScoreProfile,
    committee: Committee,
    rule: DecisionRule,
    preferred: Optional[Sequence[Alternative]] = None,
) -> EvalReport:
    """Ultimate satisfaction of every voter; the total is v(S, <u_i>)"""
    _check_sizes(rule, committee, profile.n_candidates)
    p = profile.scores[:, list(committee.members)]
    dist = np.zeros((profile.n_voters, committee.size + 1))
    dist[:, 0] = 1.0
    for j in range(committee.size):
        pj = p[:, j : j + 1]
        shifted = np.zeros_like(dist)
        shifted[:, 1:] = dist[:, :-1]
        dist = dist * (1.0 - pj) + shifted * pj
    table = _satisfaction_table(rule)
    rows = _preference_rows(preferred, profile.n_voters)
    values = np.einsum("il,il->i", dist, table[rows])
    return EvalReport.from_values(np.clip(values, 0.0, 1.0))


def evaluate(
    source: Source,
    committee: Committee,
    rule: DecisionRule,
    model: EvaluationModel,
    preferred: Optional[Sequence[Alternative]] = None,
) -> EvalReport:
    """`preferred` applies to a plain profile in the probabilistic model; instances carry their own"""
    if model is EvaluationModel.DETERMINISTIC:
        return eval_deterministic(_as_instance(source), committee, rule)
    if isinstance(source, DeterministicInstance):
        return evaluate_probabilistic(source.approvals, committee, rule, source.preferred)
    return evaluate_probabilistic(source, committee, rule, preferred)


def _as_instance(source: Source) -> DeterministicInstance:
    if isinstance(source, DeterministicInstance):
        return source
    if source.kind is not ProfileKind.APPROVAL:
        raise DimensionError("the deterministic model needs an approval profile")
    return DeterministicInstance.acceptance_oriented(source)


def optimal_committee(
    source: Source,
    k: int,
    rule: DecisionRule,
    model: EvaluationModel,
    guard: Optional[int] = None,
    preferred: Optional[Sequence[Alternative]] = None,
) -> Tuple[Committee, EvalReport]:
    """Lexicographically-first committee maximising the total ultimate satisfaction"""
    if rule.k != k:
        raise DimensionError(f"rule is defined for K={rule.k}, requested committee size {k}")
    committees = iter_committees(source.n_candidates, k, guard)
    reports = ((s, evaluate(source, s, rule, model, preferred)) for s in committees)
    (winner, report), total = lexicographic_argmax(reports, lambda pair: pair[1].total)
    logger.debug("Optimal committee under %s: %s (total %.6f)", rule.name, winner.members, total)
    return winner, report


def compare_committees(
    source: Source,
    rule: DecisionRule,
    committees: Sequence[Committee],
    model: EvaluationModel = EvaluationModel.PROBABILISTIC,
) -> List[Tuple[Committee, EvalReport]]:
    """Committees sorted by total satisfaction, best first; ties keep lexicographic order"""
    tolerance = get_settings().tie_tolerance
    evaluated = [(s, evaluate(source, s, rule, model)) for s in committees]
    return sorted(evaluated, key=lambda pair: (-round(pair[1].total / tolerance), pair[0].members))
