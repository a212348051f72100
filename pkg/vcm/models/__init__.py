from vcm.models.decision import (
    DecisionRule,
    decision_prob,
    make_majority,
    make_quota,
    make_random_dictatorship,
    make_unanimity,
    parse_decision_spec,
)
from vcm.models.experiment import (
    CommitteeSpec,
    DecisionSpec,
    ExperimentConfig,
    ExperimentMode,
    TrialRecord,
)
from vcm.models.owa import OwaVector, named_rule
from vcm.models.profile import (
    Alternative,
    Committee,
    DeterministicInstance,
    ProfileKind,
    ScoreProfile,
)
from vcm.models.rankings import RankProfile
from vcm.models.reports import Dominance, EvalReport, EvaluationModel, FullRuleOutcome

__all__ = [
    "Alternative",
    "Committee",
    "CommitteeSpec",
    "DecisionRule",
    "DecisionSpec",
    "DeterministicInstance",
    "Dominance",
    "EvalReport",
    "EvaluationModel",
    "ExperimentConfig",
    "ExperimentMode",
    "FullRuleOutcome",
    "OwaVector",
    "ProfileKind",
    "RankProfile",
    "ScoreProfile",
    "TrialRecord",
    "decision_prob",
    "make_majority",
    "make_quota",
    "make_random_dictatorship",
    "make_unanimity",
    "named_rule",
    "parse_decision_spec",
]
