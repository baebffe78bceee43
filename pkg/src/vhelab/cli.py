"""Command-line front end: attack experiments, lemma checks, theory values.

Exit codes: 0 success, 2 configuration error, 3 invariant violation or a
failing lemma check.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .errors import ConfigError, InvariantViolation
from .harness import (
    config_from_dict,
    lemma_suite,
    normalize_config,
    run_experiment,
    suite_passed,
    theory_for,
    to_csv,
    to_json,
)

_ATTACK_SCHEMES = {
    "rep-attack": "rep",
    "repmsk-attack": "repmsk",
    "pe-attack": "pe",
    "vaddg-attack": "vaddg",
}

_OVERRIDE_FLAGS = ("n", "t", "k", "d", "alpha", "beta", "nu", "trials")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write the result to this file instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output encoding (default json)")


def _add_config_flags(parser: argparse.ArgumentParser, fast: bool) -> None:
    parser.add_argument("--config", help="JSON file of experiment fields")
    for name in _OVERRIDE_FLAGS:
        parser.add_argument(f"--{name}", type=int, help=f"override the {name} field")
    parser.add_argument("--seed", type=int, help="master seed for the trial stream")
    if fast:
        parser.add_argument("--fast-trial", action="store_true", default=None,
                            help="vaddg: vectorized bit-level trial engine")
    _add_output_flags(parser)


def _build_config(args: argparse.Namespace, scheme: str):
    raw: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config document must be a JSON object")
    if raw.get("scheme", scheme) != scheme:
        raise ConfigError(
            f"config file scheme {raw['scheme']!r} does not match the subcommand")
    raw = dict(raw, scheme=scheme)
    for name in _OVERRIDE_FLAGS:
        value = getattr(args, name)
        if value is not None:
            raw[name] = value
    if args.seed is not None:
        raw["master_seed"] = args.seed
    if getattr(args, "fast_trial", None):
        raw["fast_trial"] = True
    return config_from_dict(raw)


def _emit(payload: dict, args: argparse.Namespace) -> None:
    text = to_json(payload) if args.format == "json" else to_csv(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_attack(args: argparse.Namespace) -> int:
    report = run_experiment(_build_config(args, args.scheme_name))
    _emit(report, args)
    return 0


def _cmd_lemmas(args: argparse.Namespace) -> int:
    results = lemma_suite()
    payload = {"passed": suite_passed(results), "results": results}
    _emit(payload, args)
    return 0 if payload["passed"] else 3


def _cmd_theory(args: argparse.Namespace) -> int:
    config = normalize_config(_build_config(args, args.scheme))
    payload = {
        "config": dataclasses.asdict(config),
        "p_theory": float(theory_for(config)),
    }
    _emit(payload, args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vhelab",
        description="forgery experiments against lightweight verifiable "
                    "homomorphic-encryption designs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for command, scheme in _ATTACK_SCHEMES.items():
        p = sub.add_parser(command, help=f"run {scheme} forgery trials")
        _add_config_flags(p, fast=scheme == "vaddg")
        p.set_defaults(handler=_cmd_attack, scheme_name=scheme)

    p = sub.add_parser("lemmas", help="exhaustively check the algebraic identities")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_lemmas)

    p = sub.add_parser("theory", help="print the predicted success probability")
    p.add_argument("--scheme", required=True, choices=tuple(_ATTACK_SCHEMES.values()))
    _add_config_flags(p, fast=False)
    p.set_defaults(handler=_cmd_theory)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
