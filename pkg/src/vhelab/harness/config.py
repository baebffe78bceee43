"""Experiment configuration: one flat record, strict parsing, scheme defaults."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from ..errors import ConfigError
from ..modring import factor_prime_power

SCHEMES = ("rep", "repmsk", "pe", "vaddg", "lemmas")
A_POLICIES = ("uniform", "zero")

_INT_FIELDS = frozenset(
    {"N", "n", "t", "k", "d", "alpha", "beta", "nu", "kappa", "u",
     "trials", "master_seed", "workers"}
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat record of everything a run needs; unused knobs stay None.

    scheme: rep (probe-and-recover forgery), repmsk (membership-mask forgery
    on the per-slot-key variant), pe (checksum-polynomial forgery), vaddg
    (OPRF bit-shift forgery), lemmas (exhaustive algebraic identities).
    """

    scheme: str
    N: int | None = None        # ciphertext slot count (packed schemes)
    n: int | None = None        # replication block size
    t: int | None = None        # plaintext modulus (prime power)
    k: int | None = None        # recover probe count
    d: int | None = None        # power-residue subgroup index
    alpha: int | None = None    # OPRF: distinct message inputs
    beta: int | None = None     # OPRF: spot checks
    nu: int | None = None       # OPRF: copies per message input
    kappa: int | None = None    # OPRF: published-table size
    u: int | None = None        # OPRF: forged bit index (None = per-trial)
    a_policy: str = "uniform"   # membership-set shift: fresh per trial / none
    trials: int | None = None
    master_seed: int = 0
    fast_trial: bool = False    # vaddg: bit-level trial engine
    workers: int = 1


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Strict parse: unknown fields and wrong types are ConfigErrors."""
    if not isinstance(raw, dict):
        raise ConfigError("config document must be a JSON object")
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config fields: {', '.join(unknown)}")
    if "scheme" not in raw:
        raise ConfigError("missing required field: scheme")
    clean = {}
    for key, value in raw.items():
        if key in _INT_FIELDS and value is not None:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"field {key} must be an integer, got {value!r}")
        if key == "fast_trial" and not isinstance(value, bool):
            raise ConfigError(f"field fast_trial must be a boolean, got {value!r}")
        if key == "a_policy" and not isinstance(value, str):
            raise ConfigError(f"field a_policy must be a string, got {value!r}")
        clean[key] = value
    return ExperimentConfig(**clean)


_DEFAULTS = {
    # Trial counts follow the source experiments: 1000 baseline, with the
    # low-rate configurations raised for adequate statistical power.
    "rep": dict(N=32768, n=64, t=65537, k=1, trials=1000),
    "repmsk": dict(n=64, t=65537, d=32, trials=10000),
    "pe": dict(N=32768, t=65537, trials=100),
    "vaddg": dict(alpha=105, beta=10, nu=11, kappa=4096, trials=20000),
    "lemmas": dict(trials=0),
}


def _fill(config: ExperimentConfig) -> ExperimentConfig:
    updates = {
        key: value
        for key, value in _DEFAULTS[config.scheme].items()
        if getattr(config, key) is None
    }
    if config.scheme == "repmsk" and config.N is None:
        updates["N"] = config.n if config.n is not None else _DEFAULTS["repmsk"]["n"]
    return dataclasses.replace(config, **updates) if updates else config


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def normalize_config(config: ExperimentConfig) -> ExperimentConfig:
    """Fill scheme defaults and validate every field the scheme reads."""
    _require(config.scheme in SCHEMES, f"unknown scheme {config.scheme!r}")
    c = _fill(config)
    _require(c.trials is None or c.trials >= 0, "trials must be >= 0")
    _require(c.workers >= 1, "workers must be >= 1")
    _require(c.a_policy in A_POLICIES, f"a_policy must be one of {A_POLICIES}")
    if c.scheme in ("rep", "repmsk", "pe"):
        try:
            factor_prime_power(c.t)
        except ValueError as exc:
            raise ConfigError(f"t: {exc}") from None
    if c.scheme in ("rep", "repmsk"):
        _require(c.n >= 4 and c.n % 2 == 0, "n must be an even block size >= 4")
        _require(c.n & (c.n - 1) == 0, "n must be a power of two")
        _require(c.N % c.n == 0, "N must be a multiple of n")
    if c.scheme == "rep":
        _require(1 <= c.k <= c.n, "k must lie in 1..n")
    if c.scheme == "repmsk":
        mod = factor_prime_power(c.t)
        base = mod.t - 1 if mod.is_prime else mod.p - 1
        _require(c.d >= 1 and base % c.d == 0,
                 f"d must divide {'t-1' if mod.is_prime else 'p-1'} = {base}")
    if c.scheme == "vaddg":
        _require(c.alpha >= 1, "alpha must be >= 1")
        _require(c.beta >= 0, "beta must be >= 0")
        _require(c.nu >= 1, "nu must be >= 1")
        _require(c.kappa >= 1, "kappa must be >= 1")
        _require(c.u is None or 0 <= c.u < 128, "u must lie in 0..127")
    return c
