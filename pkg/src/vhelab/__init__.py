"""Cryptanalysis laboratory for lightweight verifiable homomorphic encryption.

Three verification designs — replicated check slots (packed and per-slot-key),
checksum polynomials with a requadratization oracle, and a copy-and-spot-check
verifiable PRF — modeled over a capability-scoped homomorphic evaluation
simulator, together with the forgery attacks that break each one and a Monte
Carlo harness that reproduces the predicted success rates.
"""

from .errors import (
    AccessDenied,
    ConfigError,
    InvariantViolation,
    SimulatorError,
    VheLabError,
)
from .hesim import (
    KEY_TAG_BASE,
    KEY_TAG_BOOT,
    AdversaryView,
    BitCt,
    Capabilities,
    Context,
    VecCt,
    rotation_keys_pow2,
)
from .modring import Modulus, Residue, factor_prime_power
from .outcomes import AttackOutcome, TrialClass, Verdict, classify
from .pe import CtPoly, PeSecret, make_req_oracle, pe_encode, pe_verify
from .rep import RepClientState, RepParams, rep_encode, rep_verify, repmsk_encode
from .vaddg import PrfKeyModel, VaddgParams, VaddgQuery, build_query, client_verify

__version__ = "0.1.0"

__all__ = [
    "AccessDenied",
    "AdversaryView",
    "AttackOutcome",
    "BitCt",
    "Capabilities",
    "ConfigError",
    "Context",
    "CtPoly",
    "InvariantViolation",
    "KEY_TAG_BASE",
    "KEY_TAG_BOOT",
    "Modulus",
    "PeSecret",
    "PrfKeyModel",
    "RepClientState",
    "RepParams",
    "Residue",
    "SimulatorError",
    "TrialClass",
    "VaddgParams",
    "VaddgQuery",
    "VecCt",
    "Verdict",
    "VheLabError",
    "build_query",
    "classify",
    "client_verify",
    "factor_prime_power",
    "make_req_oracle",
    "pe_encode",
    "pe_verify",
    "rep_encode",
    "rep_verify",
    "repmsk_encode",
    "rotation_keys_pow2",
    "__version__",
]
