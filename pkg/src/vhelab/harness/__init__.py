"""Experiment driver: seeded Monte Carlo trials, statistics, reports, CLI."""

from .config import ExperimentConfig, config_from_dict, normalize_config
from .experiments import run_experiment, run_trial
from .lemmas import lemma_suite, suite_passed
from .report import build_report, to_csv, to_json
from .seeds import GAMMA, SEED_RULE, derive, finalize, trial_seed
from .stats import wilson_ci, z_score
from .theory import theory_for

__all__ = [
    "GAMMA",
    "SEED_RULE",
    "ExperimentConfig",
    "build_report",
    "config_from_dict",
    "derive",
    "finalize",
    "lemma_suite",
    "normalize_config",
    "run_experiment",
    "run_trial",
    "suite_passed",
    "theory_for",
    "to_csv",
    "to_json",
    "trial_seed",
    "wilson_ci",
    "z_score",
]
