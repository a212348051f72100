import math

import numpy as np
import pytest

from vcm.exceptions import DimensionError, GuardExceededError, RangeError, UnknownRuleError
from vcm.models.owa import (
    OwaVector,
    cc_rule,
    kmedian_rule,
    median_rule,
    named_rule,
    pav_rule,
    top_k_rule,
)
from vcm.models.profile import Committee, ProfileKind, ScoreProfile
from vcm.services.multiwinner import (
    owa_satisfaction,
    owa_total,
    owa_winner_exact,
    owa_winner_sequential,
    sequential_steps,
    top_k_committee,
)


@pytest.fixture
def one_voter() -> ScoreProfile:
    return ScoreProfile.from_rows([[0.2, 0.9, 0.5]])


@pytest.mark.parametrize(
    "weights, expected",
    [((1, 0, 0), 0.9), ((1, 1, 1), 1.6)],
)
def test_owa_satisfaction_sorts_member_scores(one_voter, weights, expected):
    alpha = OwaVector(weights=weights)
    assert owa_satisfaction(alpha, one_voter, 0, Committee.of(0, 1, 2)) == pytest.approx(expected)


def test_pav_on_two_approvals():
    profile = ScoreProfile.from_rows([[1, 1, 0]], kind=ProfileKind.APPROVAL)
    assert owa_satisfaction(pav_rule(3), profile, 0, Committee.of(0, 1, 2)) == pytest.approx(1.5)


def test_weight_length_must_match_committee(one_voter):
    with pytest.raises(DimensionError):
        owa_satisfaction(top_k_rule(2), one_voter, 0, Committee.of(0, 1, 2))


def test_named_vectors():
    assert pav_rule(3).weights == pytest.approx((1, 1 / 2, 1 / 3))
    assert cc_rule(4).weights == (1, 0, 0, 0)
    assert kmedian_rule(2, 3).weights == (0, 1, 0)
    assert median_rule(5).weights == (0, 0, 1, 0, 0)
    assert named_rule("kmedian:2", 3) == kmedian_rule(2, 3)
    assert named_rule("kmedian(3)", 3) == kmedian_rule(3, 3)
    assert named_rule("kmedian", 3, position=1) == kmedian_rule(1, 3)
    assert named_rule("TopK", 2) == top_k_rule(2)


def test_named_rule_errors():
    with pytest.raises(RangeError):
        kmedian_rule(4, 3)
    with pytest.raises(RangeError):
        named_rule("kmedian", 3)
    with pytest.raises(UnknownRuleError):
        named_rule("borda-ish", 3)


def test_table1a_median_winner(table1a):
    committee = owa_winner_exact(median_rule(3), table1a.approvals, 3)
    assert committee == Committee.of(0, 1, 2)
    assert owa_total(median_rule(3), table1a.approvals, committee) == 5


def test_table1a_top3_winner(table1a):
    committee = owa_winner_exact(top_k_rule(3), table1a.approvals, 3)
    assert committee == Committee.of(0, 1, 2)
    assert owa_total(top_k_rule(3), table1a.approvals, committee) == 12


def test_table1b_top3_winner(table1b):
    committee = owa_winner_exact(top_k_rule(3), table1b.approvals, 3)
    assert committee == Committee.of(0, 1, 7)
    assert owa_total(top_k_rule(3), table1b.approvals, committee) == 8
    assert top_k_committee(table1b.approvals, 3) == committee


def test_exact_winner_respects_guard(table1a):
    with pytest.raises(GuardExceededError):
        owa_winner_exact(top_k_rule(3), table1a.approvals, 3, guard=10)


def test_exact_winner_rejects_oversized_committee(table1a):
    with pytest.raises(RangeError):
        owa_winner_exact(top_k_rule(9), table1a.approvals, 9)


def test_sequential_trace_on_table1b(table1b):
    steps = sequential_steps(top_k_rule(3), table1b.approvals, 3)
    assert [c for c, _ in steps] == [0, 7, 1]
    assert [total for _, total in steps] == pytest.approx([3, 6, 8])


def test_sequential_cc_with_one_seat_is_exact(random_approvals):
    for _ in range(20):
        profile = random_approvals(6, 7)
        assert owa_winner_sequential(cc_rule(1), profile, 1) == owa_winner_exact(cc_rule(1), profile, 1)


def test_sequential_topk_is_exact(rng):
    for _ in range(20):
        profile = ScoreProfile(scores=rng.random((5, 7)))
        assert owa_winner_sequential(top_k_rule(3), profile, 3) == owa_winner_exact(top_k_rule(3), profile, 3)


def test_sequential_pav_within_greedy_bound(table1a, random_approvals):
    profiles = [table1a.approvals] + [random_approvals(8, 7) for _ in range(20)]
    for profile in profiles:
        greedy = owa_winner_sequential(pav_rule(3), profile, 3)
        exact = owa_winner_exact(pav_rule(3), profile, 3)
        optimum = owa_total(pav_rule(3), profile, exact)
        score = owa_total(pav_rule(3), profile, greedy)
        assert (1 - 1 / math.e) * optimum - 1e-9 <= score <= optimum + 1e-9


@pytest.mark.parametrize("make_rule", [pav_rule, cc_rule, top_k_rule, median_rule])
def test_sequential_never_beats_exact(rng, make_rule):
    for _ in range(30):
        k = int(rng.integers(1, 5))
        profile = ScoreProfile(scores=rng.random((int(rng.integers(2, 8)), int(rng.integers(k, 8)))))
        alpha = make_rule(k)
        greedy = owa_total(alpha, profile, owa_winner_sequential(alpha, profile, k))
        optimum = owa_total(alpha, profile, owa_winner_exact(alpha, profile, k))
        assert greedy <= optimum + 1e-9


@pytest.mark.parametrize("make_rule", [pav_rule, top_k_rule])
def test_relabelled_candidates_relabel_the_winners(rng, make_rule):
    # strictly positive weights and continuous scores leave no ties for the index order to break
    for _ in range(30):
        k = int(rng.integers(1, 5))
        m = int(rng.integers(k, 8))
        profile = ScoreProfile(scores=rng.random((int(rng.integers(2, 8)), m)))
        perm = rng.permutation(m)
        permuted = ScoreProfile(scores=profile.scores[:, perm])
        alpha = make_rule(k)
        for winner in (owa_winner_exact, owa_winner_sequential):
            original = winner(alpha, profile, k)
            relabelled = winner(alpha, permuted, k)
            assert Committee(members=perm[list(relabelled.members)].tolist()) == original


def test_top_k_committee_breaks_ties_by_index():
    profile = ScoreProfile(scores=np.array([[0.5, 1.0, 0.5, 1.0]]))
    assert top_k_committee(profile, 3) == Committee.of(0, 1, 3)
