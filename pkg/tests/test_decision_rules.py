import pytest
from pydantic import ValidationError

from vcm.exceptions import DecisionRuleError, RangeError
from vcm.models.decision import (
    DecisionRule,
    decision_prob,
    majority_or_tie_coin,
    make_custom,
    make_majority,
    make_quota,
    make_random_dictatorship,
    make_unanimity,
    parse_decision_spec,
)
from vcm.models.profile import Alternative


@pytest.mark.parametrize(
    "k, expected",
    [(1, (0, 1)), (3, (0, 0, 1, 1)), (5, (0, 0, 0, 1, 1, 1))],
)
def test_majority_tables(k, expected):
    rule = make_majority(k)
    assert rule.probs == expected
    assert rule.symmetric
    assert rule.is_monotone()


def test_majority_rejects_even_committees():
    with pytest.raises(DecisionRuleError):
        make_majority(4)


@pytest.mark.parametrize(
    "k, expected",
    [(1, (0, 1)), (3, (0, 1 / 3, 2 / 3, 1)), (4, (0, 0.25, 0.5, 0.75, 1))],
)
def test_random_dictatorship_tables(k, expected):
    rule = make_random_dictatorship(k)
    assert rule.probs == pytest.approx(expected)
    assert rule.is_symmetric_table()


def test_unanimity_is_never_symmetric():
    assert make_unanimity(1).probs == (0, 1)
    assert make_unanimity(2).probs == (0, 0, 1)
    assert decision_prob(make_unanimity(3), 3) == 1
    assert not make_unanimity(1).symmetric


def test_decision_prob_examples():
    assert decision_prob(make_majority(3), 2) == 1
    assert decision_prob(make_random_dictatorship(3), 1) == pytest.approx(1 / 3)
    assert decision_prob(make_unanimity(3), 2) == 0


@pytest.mark.parametrize("accepts", [-1, 4])
def test_decision_prob_out_of_range(accepts):
    with pytest.raises(RangeError):
        decision_prob(make_majority(3), accepts)


def test_quota_without_plateau_is_majority():
    assert make_quota(3, 2, half_plateau=False).probs == make_majority(3).probs


def test_quota_with_plateau():
    assert make_quota(3, 3, half_plateau=True).probs == (0, 0.5, 0.5, 1)


def test_quota_past_the_committee_is_constant_half():
    rule = make_quota(3, 4, half_plateau=True)
    assert rule.probs == (0.5, 0.5, 0.5, 0.5)
    assert rule.is_monotone()


def test_quota_even_committee_has_fair_centre():
    assert make_quota(4, 3, half_plateau=False).probs == (0, 0, 0.5, 1, 1)
    assert make_quota(4, 4, half_plateau=True).probs == (0, 0.5, 0.5, 0.5, 1)


@pytest.mark.parametrize("threshold, plateau", [(1, False), (3, False), (5, True)])
def test_quota_rejects_bad_thresholds(threshold, plateau):
    with pytest.raises(DecisionRuleError):
        make_quota(3, threshold, half_plateau=plateau)


def test_majority_or_tie_coin():
    assert majority_or_tie_coin(3) == make_majority(3)
    coin = majority_or_tie_coin(2)
    assert coin.probs == (0, 0.5, 1)
    assert coin.name == "majority"


def test_flagged_symmetric_table_is_checked():
    with pytest.raises(ValidationError):
        DecisionRule(k=2, probs=(0, 0, 1), symmetric=True)


def test_table_length_and_range_are_checked():
    with pytest.raises(ValidationError):
        DecisionRule(k=3, probs=(0, 1, 1), symmetric=False)
    with pytest.raises(ValidationError):
        make_custom([0, 1.5], symmetric=False)


def test_satisfaction_reads_the_voters_side():
    unanimity = make_unanimity(2)
    # a rejecting voter whose two members both reject gets Reject for sure
    assert unanimity.satisfaction(2, Alternative.REJECT) == 1
    # one member agreeing to reject is enough under unanimity
    assert unanimity.satisfaction(1, Alternative.REJECT) == 1
    assert unanimity.satisfaction(0, Alternative.REJECT) == 0
    assert unanimity.satisfaction(1, Alternative.ACCEPT) == 0

    majority = make_majority(3)
    for agreeing in range(4):
        assert majority.satisfaction(agreeing, Alternative.ACCEPT) == majority.satisfaction(
            agreeing, Alternative.REJECT
        )


@pytest.mark.parametrize(
    "spec, name",
    [
        ("majority", "majority"),
        ("rd", "random-dictatorship"),
        ("Random-Dictatorship", "random-dictatorship"),
        ("unanimity", "unanimity"),
        ("quota:2", "quota:2"),
        ("quota:3", "quota:3+half"),
    ],
)
def test_parse_decision_spec(spec, name):
    assert parse_decision_spec(spec, 3).name == name


@pytest.mark.parametrize("spec", ["plurality", "quota:x"])
def test_parse_decision_spec_rejects_unknown(spec):
    with pytest.raises(DecisionRuleError):
        parse_decision_spec(spec, 3)
