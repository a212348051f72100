# vcm/cli/dependencies.py
"""
Shared resolution of settings, thread counts and experiment configs for the subcommands
"""
import argparse
from typing import Any, Dict, Optional

from vcm.config import get_settings
from vcm.models.experiment import INSIGNIFICANCE_BAND, ExperimentConfig, ExperimentMode


def get_threads(args: argparse.Namespace) -> Optional[int]:
    """--threads when given; None leaves the choice to the experiment config"""
    return args.threads


def get_guard(args: argparse.Namespace) -> Optional[int]:
    return getattr(args, "guard", None)


def load_experiment_config(
    args: argparse.Namespace, mode: ExperimentMode, overrides: Dict[str, Any]
) -> ExperimentConfig:
    """Config file (if any) under the command-line flags; unset flags keep file values

    Threads: --threads, then the file, then VCM_THREADS.
    """
    values = {key: value for key, value in overrides.items() if value is not None}
    values["mode"] = mode
    if getattr(args, "insignificant", False):
        values["insignificance_band"] = INSIGNIFICANCE_BAND
    if args.threads is not None:
        values["threads"] = args.threads
    if args.config:
        return ExperimentConfig.from_file(args.config, **values)
    values.setdefault("committee_size", get_settings().default_committee_size)
    return ExperimentConfig(**values)
