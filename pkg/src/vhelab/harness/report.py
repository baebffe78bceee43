"""Report envelopes: fixed JSON schema, flat CSV export."""

from __future__ import annotations

import dataclasses
import json

from .seeds import SEED_RULE
from .stats import wilson_ci, z_score

SCHEMA_VERSION = 1

COUNT_KEYS = ("success", "detected", "benign")


def build_report(config, counts: dict[str, int], p_theory, wall_ms: float) -> dict:
    """Assemble the fixed envelope from aggregated trial counts."""
    counts = {key: int(counts.get(key, 0)) for key in COUNT_KEYS}
    trials = sum(counts.values())
    successes = counts["success"]
    p_hat = successes / trials if trials else None
    lo, hi = wilson_ci(successes, trials)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": dataclasses.asdict(config),
        "counts": counts,
        "p_hat": p_hat,
        "ci95": [lo, hi],
        "p_theory": None if p_theory is None else float(p_theory),
        "z": z_score(successes, trials, p_theory),
        "seed": {"master": config.master_seed, "per_trial": SEED_RULE},
        "wall_ms": wall_ms,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _flatten(prefix: str, value, row: dict) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), sub, row)
    elif isinstance(value, (list, tuple)):
        for i, sub in enumerate(value):
            _flatten(f"{prefix}.{i}", sub, row)
    else:
        row[prefix] = "" if value is None else value


def to_csv(report: dict) -> str:
    """One header line plus one data line; nested keys dot-joined."""
    row: dict = {}
    _flatten("", report, row)
    keys = sorted(row)
    header = ",".join(keys)
    cells = []
    for key in keys:
        cell = str(row[key])
        if "," in cell or '"' in cell:
            cell = '"' + cell.replace('"', '""') + '"'
        cells.append(cell)
    return header + "\n" + ",".join(cells) + "\n"
