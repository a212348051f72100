# vcm/services/experiments.py
"""
Monte-Carlo pipelines: voters and candidates on a line, and real PrefLib electorates
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.random import SeedSequence, default_rng

from vcm.exceptions import DatasetFilteredError, ExperimentConfigError
from vcm.models.decision import DecisionRule, majority_or_tie_coin, make_random_dictatorship
from vcm.models.experiment import (
    CommitteeSpec,
    DecisionSpec,
    ExperimentConfig,
    ExperimentMode,
    TrialRecord,
)
from vcm.models.owa import cc_rule, pav_rule
from vcm.models.profile import ScoreProfile
from vcm.models.rankings import RankProfile
from vcm.services.multiwinner import owa_winner_sequential, top_k_committee
from vcm.services.preflib import borda_scores, filter_dataset, issue_distances

logger = logging.getLogger(__name__)

PairKey = Tuple[CommitteeSpec, DecisionSpec]

# None stands for direct democracy: the electorate votes itself
Members = Optional[np.ndarray]


def acceptance_probability(p, distance) -> np.ndarray:
    """clamp(1 - p * distance, 0, 1)"""
    return np.clip(1.0 - np.asarray(p, dtype=float) * np.asarray(distance, dtype=float), 0.0, 1.0)


def significance_mask(
    p: np.ndarray, distance: np.ndarray, band: Optional[Tuple[float, float]]
) -> np.ndarray:
    """issues x voters; False where p * distance falls inside the insignificance band"""
    if band is None:
        return np.ones(distance.shape, dtype=bool)
    weighted = p[:, None] * distance
    return ~((weighted >= band[0]) & (weighted <= band[1]))


def decision_rule_for(spec: DecisionSpec, size: int) -> DecisionRule:
    if spec is DecisionSpec.MAJORITY:
        return majority_or_tie_coin(size)
    return make_random_dictatorship(size)


def committee_decisions(votes: np.ndarray, rule: DecisionRule) -> np.ndarray:
    """Acceptance probability per issue; votes is issues x members (True = Accept)"""
    accepts = votes.sum(axis=1)
    return np.asarray(rule.probs, dtype=float)[accepts]


def consistency(prefers: np.ndarray, accept_prob: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Expected fraction of (significant) issues decided as each voter prefers

    prefers and mask are issues x voters; accept_prob is per issue.
    """
    agreeing = np.where(prefers, accept_prob[:, None], 1.0 - accept_prob[:, None])
    counted = mask.sum(axis=0)
    fraction = (agreeing * mask).sum(axis=0) / np.maximum(counted, 1)
    return np.clip(fraction, 0.0, 1.0)


def build_committees(
    profile: ScoreProfile, k: int, specs: Sequence[CommitteeSpec], centrist: int
) -> Dict[CommitteeSpec, Members]:
    committees: Dict[CommitteeSpec, Members] = {}
    for spec in specs:
        if spec is CommitteeSpec.TOPK:
            committee = top_k_committee(profile, k)
        elif spec is CommitteeSpec.SEQ_PAV:
            committee = owa_winner_sequential(pav_rule(k), profile, k)
        elif spec is CommitteeSpec.SEQ_CC:
            committee = owa_winner_sequential(cc_rule(k), profile, k)
        elif spec is CommitteeSpec.SINGLE_CENTRIST:
            committees[spec] = np.array([centrist])
            continue
        else:
            committees[spec] = None
            continue
        committees[spec] = np.array(committee.members)
    return committees


class MonteCarloExperiment:
    """Shared trial loop; subclasses draw one trial and return per-voter satisfactions"""

    def __init__(self, config: ExperimentConfig, threads: Optional[int] = None):
        self.config = config
        self.threads = threads or config.threads

    def _trial(self, rng: np.random.Generator) -> Tuple[Dict[PairKey, np.ndarray], np.ndarray]:
        raise NotImplementedError

    def _score_trial(
        self,
        committees: Dict[CommitteeSpec, Members],
        prefers: np.ndarray,
        candidate_votes: np.ndarray,
        mask: np.ndarray,
    ) -> Dict[PairKey, np.ndarray]:
        satisfactions = {}
        for spec, members in committees.items():
            votes = prefers if members is None else candidate_votes[:, members]
            for decision in self.config.decision_rules:
                rule = decision_rule_for(decision, votes.shape[1])
                accept_prob = committee_decisions(votes, rule)
                satisfactions[(spec, decision)] = consistency(prefers, accept_prob, mask)
        return satisfactions

    def trial_means(self, seed: SeedSequence) -> Tuple[Dict[PairKey, np.ndarray], np.ndarray]:
        """Per-voter satisfaction and x averaged over trials, reduced in trial order"""
        streams = seed.spawn(self.config.n_trials)

        def run_one(stream: SeedSequence):
            return self._trial(default_rng(stream))

        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(run_one, streams))
        else:
            results = [run_one(stream) for stream in streams]
        logger.info("Finished %d trials on %d thread(s)", len(results), self.threads)

        n_trials = len(results)
        keys = list(results[0][0].keys())
        means = {key: np.stack([r[0][key] for r in results]).sum(axis=0) / n_trials for key in keys}
        positions = np.stack([r[1] for r in results]).sum(axis=0) / n_trials
        return means, positions

    def _records(self, means: Dict[PairKey, np.ndarray], x: np.ndarray) -> List[TrialRecord]:
        records = []
        for spec in self.config.rules:
            for decision in self.config.decision_rules:
                for position, value in zip(x, means[(spec, decision)]):
                    records.append(
                        TrialRecord(x=float(position), rule=spec, decision=decision, satisfaction=float(value))
                    )
        return records


class LineExperiment(MonteCarloExperiment):
    """Voters, candidates and issues uniform on [0, 1]; voter j is the j-th leftmost in a trial"""

    def __init__(self, config: ExperimentConfig, threads: Optional[int] = None):
        if config.mode is not ExperimentMode.LINE:
            raise ExperimentConfigError(f"line experiment needs mode 'line', got '{config.mode.value}'")
        super().__init__(config, threads)

    def _trial(self, rng: np.random.Generator):
        config = self.config
        n, m, k = config.n_voters, config.n_candidates, config.committee_size
        low, high = config.p_range

        voters = np.sort(rng.uniform(0.0, 1.0, n))
        candidates = rng.uniform(0.0, 1.0, m)
        # issue i_v sits at voter v's position
        p = rng.uniform(low, high, config.n_issues)

        voter_dist = np.abs(voters[:, None] - voters[None, :])
        cand_dist = np.abs(voters[:, None] - candidates[None, :])
        prefers = rng.random((config.n_issues, n)) < acceptance_probability(p[:, None], voter_dist)
        candidate_votes = rng.random((config.n_issues, m)) < acceptance_probability(p[:, None], cand_dist)
        mask = significance_mask(p, voter_dist, config.insignificance_band)

        scores = ScoreProfile(scores=1.0 - np.abs(voters[:, None] - candidates[None, :]))
        centrist = int(np.argmin(np.abs(candidates - 0.5)))
        committees = build_committees(scores, k, config.rules, centrist)
        return self._score_trial(committees, prefers, candidate_votes, mask), voters

    def run(self) -> List[TrialRecord]:
        config = self.config
        logger.info(
            "Line experiment: %d voters, %d candidates, K=%d, %d trials, seed %d",
            config.n_voters,
            config.n_candidates,
            config.committee_size,
            config.n_trials,
            config.seed,
        )
        means, positions = self.trial_means(SeedSequence(config.seed))
        return self._records(means, positions)


class PreflibExperiment(MonteCarloExperiment):
    """One issue per voter, placed at the voter's ranking; committees from Borda scores"""

    def __init__(
        self,
        config: ExperimentConfig,
        profile: RankProfile,
        threads: Optional[int] = None,
        name: str = "dataset",
    ):
        if config.mode is not ExperimentMode.PREFLIB:
            raise ExperimentConfigError(f"PrefLib experiment needs mode 'preflib', got '{config.mode.value}'")
        if not filter_dataset(profile):
            raise DatasetFilteredError(
                f"{name}: {profile.n_voters} voters / {profile.n_candidates} candidates is below the thresholds"
            )
        if config.committee_size > profile.n_candidates:
            raise ExperimentConfigError(
                f"committee_size {config.committee_size} exceeds the {profile.n_candidates} candidates of {name}"
            )
        super().__init__(config, threads)
        self.profile = profile
        self.name = name

        self.voter_dist, self.cand_dist = issue_distances(profile)
        scores = borda_scores(profile)
        borda_winner = top_k_committee(scores, 1).members[0]
        # committees depend only on the rankings, not on the trial
        self.committees = build_committees(scores, config.committee_size, config.rules, borda_winner)

    def _trial(self, rng: np.random.Generator):
        config = self.config
        n = self.profile.n_voters
        low, high = config.p_range

        p = rng.uniform(low, high, n)
        prefers = rng.random(self.voter_dist.shape) < acceptance_probability(p[:, None], self.voter_dist)
        candidate_votes = rng.random(self.cand_dist.shape) < acceptance_probability(p[:, None], self.cand_dist)
        mask = significance_mask(p, self.voter_dist, config.insignificance_band)
        return self._score_trial(self.committees, prefers, candidate_votes, mask), np.zeros(n)

    def voter_means(self, seed: SeedSequence) -> Dict[PairKey, np.ndarray]:
        means, _ = self.trial_means(seed)
        return means

    def run(self) -> List[TrialRecord]:
        logger.info("PrefLib experiment on %s: %d voters", self.name, self.profile.n_voters)
        return sorted_curves(self.config, self.voter_means(SeedSequence(self.config.seed)))


def sorted_curves(config: ExperimentConfig, means: Dict[PairKey, np.ndarray]) -> List[TrialRecord]:
    """Per-voter means sorted ascending; x is the voter's fraction j/n along the curve"""
    records = []
    for spec in config.rules:
        for decision in config.decision_rules:
            curve = np.sort(means[(spec, decision)])
            n = curve.size
            for j, value in enumerate(curve):
                records.append(
                    TrialRecord(x=j / n, rule=spec, decision=decision, satisfaction=float(value))
                )
    return records


def run_line_experiment(config: ExperimentConfig, threads: Optional[int] = None) -> List[TrialRecord]:
    return LineExperiment(config, threads).run()


def run_preflib_experiment(
    config: ExperimentConfig, profile: RankProfile, threads: Optional[int] = None
) -> List[TrialRecord]:
    return PreflibExperiment(config, profile, threads).run()


def run_preflib_corpus(
    config: ExperimentConfig,
    datasets: Sequence[Tuple[str, RankProfile]],
    threads: Optional[int] = None,
) -> List[TrialRecord]:
    """Pools the per-voter means of every dataset that passes the filter, then sorts"""
    kept = [(name, profile) for name, profile in datasets if filter_dataset(profile)]
    if not kept:
        raise DatasetFilteredError(
            f"none of {len(datasets)} dataset(s) passes the voter/candidate thresholds"
        )
    for name, profile in datasets:
        if not filter_dataset(profile):
            logger.warning(
                "Skipping %s: %d voters / %d candidates", name, profile.n_voters, profile.n_candidates
            )

    streams = SeedSequence(config.seed).spawn(len(kept))
    pooled: Dict[PairKey, List[np.ndarray]] = {}
    for (name, profile), stream in zip(kept, streams):
        means = PreflibExperiment(config, profile, threads, name=name).voter_means(stream)
        for key, values in means.items():
            pooled.setdefault(key, []).append(values)
    logger.info("Pooled %d of %d datasets", len(kept), len(datasets))
    return sorted_curves(config, {key: np.concatenate(parts) for key, parts in pooled.items()})
