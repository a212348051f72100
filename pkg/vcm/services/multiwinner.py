# vcm/services/multiwinner.py
"""
OWA multiwinner rules: satisfaction, exact winners by enumeration, sequential winners
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from vcm.config import get_settings
from vcm.exceptions import DimensionError
from vcm.models.owa import OwaVector
from vcm.models.profile import Committee, ScoreProfile
from vcm.utils.combinatorics import check_committee_size, iter_committees, lexicographic_argmax

logger = logging.getLogger(__name__)


def _check_weights(alpha: OwaVector, k: int) -> None:
    if alpha.size != k:
        raise DimensionError(f"OWA vector has {alpha.size} weights for a committee of size {k}")


def owa_satisfaction(alpha: OwaVector, profile: ScoreProfile, voter: int, committee: Committee) -> float:
    _check_weights(alpha, committee.size)
    ordered = np.sort(profile.member_scores(voter, committee))[::-1]
    return float(ordered @ alpha.as_array())


def owa_voter_satisfactions(alpha: OwaVector, profile: ScoreProfile, committee: Committee) -> np.ndarray:
    """alpha(i, S) for every voter"""
    _check_weights(alpha, committee.size)
    ordered = -np.sort(-profile.scores[:, list(committee.members)], axis=1)
    return ordered @ alpha.as_array()


def owa_total(alpha: OwaVector, profile: ScoreProfile, committee: Committee) -> float:
    return float(owa_voter_satisfactions(alpha, profile, committee).sum())


def owa_winner_exact(
    alpha: OwaVector, profile: ScoreProfile, k: int, guard: Optional[int] = None
) -> Committee:
    """Lexicographically-first committee maximising the total alpha-satisfaction"""
    _check_weights(alpha, k)
    committees = iter_committees(profile.n_candidates, k, guard)
    winner, total = lexicographic_argmax(committees, lambda s: owa_total(alpha, profile, s))
    logger.debug("Exact %s winner %s with total %.6f", alpha.name, winner.members, total)
    return winner


def sequential_steps(alpha: OwaVector, profile: ScoreProfile, k: int) -> List[Tuple[int, float]]:
    """Greedy trace: (candidate added, total satisfaction) per step

    At step t the partial committee is scored with the first t weights of alpha.
    """
    _check_weights(alpha, k)
    check_committee_size(k, profile.n_candidates)
    tolerance = get_settings().tie_tolerance
    weights = alpha.as_array()
    scores = profile.scores

    chosen: List[int] = []
    steps: List[Tuple[int, float]] = []
    for t in range(1, k + 1):
        remaining = np.array([c for c in range(profile.n_candidates) if c not in chosen])
        current = scores[:, chosen]
        # (voters, remaining candidates, t) member scores of every extension S + c
        extended = np.concatenate(
            [
                np.broadcast_to(current[:, None, :], (scores.shape[0], remaining.size, len(chosen))),
                scores[:, remaining][:, :, None],
            ],
            axis=2,
        )
        ordered = -np.sort(-extended, axis=2)
        totals = (ordered @ weights[:t]).sum(axis=0)
        best = totals.max()
        pick = int(np.flatnonzero(totals >= best - tolerance)[0])
        chosen.append(int(remaining[pick]))
        steps.append((int(remaining[pick]), float(totals[pick])))
    return steps


def owa_winner_sequential(alpha: OwaVector, profile: ScoreProfile, k: int) -> Committee:
    steps = sequential_steps(alpha, profile, k)
    return Committee(members=[candidate for candidate, _ in steps])


def top_k_committee(profile: ScoreProfile, k: int) -> Committee:
    """Top-K winner through its separable objective: the K largest column sums"""
    check_committee_size(k, profile.n_candidates)
    tolerance = get_settings().tie_tolerance
    totals = profile.scores.sum(axis=0)
    # descending total, then ascending index; near-equal totals count as ties
    order = sorted(range(profile.n_candidates), key=lambda c: (-round(totals[c] / tolerance), c))
    return Committee(members=order[:k])
