# vcm/cli/commands.py
"""
Subcommand adapters: parse flags, call the library, return the text for standard output
"""
import argparse
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from vcm.cli.dependencies import get_guard, get_threads, load_experiment_config
from vcm.exceptions import DimensionError
from vcm.models.decision import parse_decision_spec
from vcm.models.experiment import ExperimentMode
from vcm.models.owa import named_rule
from vcm.models.profile import Alternative, DeterministicInstance, ProfileKind, ScoreProfile
from vcm.models.reports import EvaluationModel
from vcm.services.committee_eval import evaluate, optimal_committee
from vcm.services.constructors import comb, optimal_full_multiwinner
from vcm.services.experiments import run_line_experiment, run_preflib_corpus
from vcm.services.multiwinner import owa_total, owa_winner_exact, owa_winner_sequential
from vcm.services.preflib import PreflibParser, borda_scores, load_dataset_dir
from vcm.services.result_formatter import ResultFormatter
from vcm.utils.file_handler import FileHandler
from vcm.utils.text_utils import TextProcessor

logger = logging.getLogger(__name__)

Source = Union[ScoreProfile, DeterministicInstance]
Preferred = Tuple[Alternative, ...]


def _profile_of(source: Source) -> ScoreProfile:
    return source.approvals if isinstance(source, DeterministicInstance) else source


def _probabilities(source: Source, args: argparse.Namespace) -> Tuple[Source, Optional[Preferred]]:
    """Maps an approval profile onto representation probabilities when --p/--q are given

    The A/R row of an instance is returned alongside the mapped profile.
    """
    if args.p is None and args.q is None:
        return source, None
    if args.p is None or args.q is None:
        raise DimensionError("--p and --q must be given together")
    profile = _profile_of(source)
    if profile.kind is not ProfileKind.APPROVAL:
        raise DimensionError("--p/--q apply to approval profiles only")
    preferred = source.preferred if isinstance(source, DeterministicInstance) else None
    return profile.approval_to_probabilities(args.p, args.q), preferred


def winners(args: argparse.Namespace) -> str:
    profile = FileHandler.read_profile(args.profile)
    alpha = named_rule(args.rule, args.k)
    if args.sequential:
        committee = owa_winner_sequential(alpha, profile, args.k)
    else:
        committee = owa_winner_exact(alpha, profile, args.k, get_guard(args))
    return ResultFormatter().committee_line(committee, owa_total(alpha, profile, committee)) + "\n"


def evaluate_committee(args: argparse.Namespace) -> str:
    model = EvaluationModel(args.model)
    source, preferred = FileHandler.read_source(args.profile), None
    if model is EvaluationModel.PROBABILISTIC:
        source, preferred = _probabilities(source, args)
    committee = TextProcessor.parse_committee(args.committee)
    rule = parse_decision_spec(args.decision, committee.size)
    report = evaluate(source, committee, rule, model, preferred)

    formatter = ResultFormatter()
    if args.per_voter:
        return "\n".join(formatter.report_lines(report)) + "\n"
    return formatter.real(report.total) + "\n"


def optimal(args: argparse.Namespace) -> str:
    model = EvaluationModel(args.model)
    source, preferred = FileHandler.read_source(args.profile), None
    if model is EvaluationModel.PROBABILISTIC:
        source, preferred = _probabilities(source, args)
    rule = parse_decision_spec(args.decision, args.k)
    committee, report = optimal_committee(source, args.k, rule, model, get_guard(args), preferred)
    return ResultFormatter().committee_line(committee, report.total) + "\n"


def optimal_full(args: argparse.Namespace) -> str:
    instance = FileHandler.read_instance(args.profile)
    outcome = optimal_full_multiwinner(instance, args.k, get_guard(args))
    return ResultFormatter().outcome_line(outcome) + "\n"


def comb_command(args: argparse.Namespace) -> str:
    instance = FileHandler.read_instance(args.profile)
    return ResultFormatter().outcome_line(comb(instance, args.k, get_guard(args))) + "\n"


def _write_records(records, out) -> str:
    formatter = ResultFormatter()
    if out is None:
        return formatter.to_csv_text(records)
    formatter.emit_csv(records, out)
    return ""


def simulate_line(args: argparse.Namespace) -> str:
    config = load_experiment_config(
        args,
        ExperimentMode.LINE,
        {
            "n_voters": args.voters,
            "n_candidates": args.candidates,
            "committee_size": args.k,
            "n_trials": args.trials,
            "seed": args.seed,
        },
    )
    records = run_line_experiment(config, get_threads(args))
    return _write_records(records, args.out)


def simulate_preflib(args: argparse.Namespace) -> str:
    config = load_experiment_config(
        args,
        ExperimentMode.PREFLIB,
        {"committee_size": args.k, "n_trials": args.trials, "seed": args.seed},
    )
    source = Path(args.dir)
    if source.is_dir():
        datasets = load_dataset_dir(source)
    else:
        datasets = [(source.name, PreflibParser().read(source))]
    records = run_preflib_corpus(config, datasets, get_threads(args))
    return _write_records(records, args.out)


def parse_preflib_command(args: argparse.Namespace) -> str:
    profile = PreflibParser().read(args.file)
    return FileHandler.serialize_profile(borda_scores(profile))


def _add_profile(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--profile", required=True, help="profile file (n m kind header)")


def _add_guard(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--guard", type=int, default=None, help="maximum number of committees to enumerate")


def _add_model(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=[m.value for m in EvaluationModel], default="prob")
    parser.add_argument("--p", type=float, default=None, help="representation probability of approved candidates")
    parser.add_argument("--q", type=float, default=None, help="representation probability of the others")


def register(subparsers) -> None:
    """Adds every subcommand; each sets `handler` to its adapter"""
    cmd = subparsers.add_parser("winners", help="OWA winning committee")
    _add_profile(cmd)
    cmd.add_argument("--rule", required=True, help="topk | cc | pav | median | kmedian:k")
    cmd.add_argument("--k", type=int, required=True)
    cmd.add_argument("--sequential", action="store_true", help="greedy sequential variant")
    _add_guard(cmd)
    cmd.set_defaults(handler=winners)

    cmd = subparsers.add_parser("evaluate", help="total ultimate satisfaction of a committee")
    _add_profile(cmd)
    cmd.add_argument("--committee", required=True, help="1-based candidate ids, e.g. 1,2,3")
    cmd.add_argument("--decision", required=True, help="majority | rd | unanimity | quota:t")
    _add_model(cmd)
    cmd.add_argument("--per-voter", action="store_true", help="print voter,satisfaction rows")
    cmd.set_defaults(handler=evaluate_committee)

    cmd = subparsers.add_parser("optimal-committee", help="best committee for a decision rule")
    _add_profile(cmd)
    cmd.add_argument("--k", type=int, required=True)
    cmd.add_argument("--decision", required=True)
    _add_model(cmd)
    _add_guard(cmd)
    cmd.set_defaults(handler=optimal)

    cmd = subparsers.add_parser("optimal-full", help="best committee and decision rule (deterministic model)")
    _add_profile(cmd)
    cmd.add_argument("--k", type=int, required=True)
    _add_guard(cmd)
    cmd.set_defaults(handler=optimal_full)

    cmd = subparsers.add_parser("comb", help="Comb full multiwinner rule")
    _add_profile(cmd)
    cmd.add_argument("--k", type=int, required=True)
    _add_guard(cmd)
    cmd.set_defaults(handler=comb_command)

    cmd = subparsers.add_parser("simulate-line", help="voters and candidates on a line")
    cmd.add_argument("--voters", type=int, default=None)
    cmd.add_argument("--candidates", type=int, default=None)
    cmd.add_argument("--k", type=int, default=None)
    cmd.add_argument("--trials", type=int, default=None)
    cmd.add_argument("--seed", type=int, default=None)
    cmd.add_argument("--insignificant", action="store_true", help="count significant issues only")
    cmd.add_argument("--out", default=None, help="CSV file (standard output when omitted)")
    cmd.set_defaults(handler=simulate_line)

    cmd = subparsers.add_parser("simulate-preflib", help="PrefLib electorates")
    cmd.add_argument("--dir", required=True, help="directory of .soc files, or a single file")
    cmd.add_argument("--k", type=int, default=None)
    cmd.add_argument("--trials", type=int, default=None)
    cmd.add_argument("--seed", type=int, default=None)
    cmd.add_argument("--insignificant", action="store_true")
    cmd.add_argument("--out", default=None)
    cmd.set_defaults(handler=simulate_preflib)

    cmd = subparsers.add_parser("parse-preflib", help="Borda score profile of a PrefLib file")
    cmd.add_argument("file")
    cmd.set_defaults(handler=parse_preflib_command)
