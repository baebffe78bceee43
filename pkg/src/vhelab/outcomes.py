"""Verdicts and trial classifications shared by schemes, attacks and the harness."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Client verification result: Accept carries the delivered value."""

    accepted: bool
    value: Any = None

    @staticmethod
    def accept(value) -> "Verdict":
        return Verdict(True, value)

    @staticmethod
    def reject() -> "Verdict":
        return Verdict(False, None)


class TrialClass(enum.Enum):
    """Classification of one attack trial against the honest result.

    FORGERY_SUCCESS: verifier accepted and the delivered value differs from
    the honest one. DETECTED: verifier rejected. BENIGN: accepted but the
    delivered value equals the honest result (the forgery changed nothing).
    """

    FORGERY_SUCCESS = "success"
    DETECTED = "detected"
    BENIGN = "benign"


def classify(verdict: Verdict, honest_value, delivered_equal=None) -> TrialClass:
    """Map a verdict plus honest-result comparison onto the three classes.

    `delivered_equal` overrides the equality test for values that need a
    custom comparison (vectors, tuples); otherwise `verdict.value` is compared
    against `honest_value` with `==`.
    """
    if not verdict.accepted:
        return TrialClass.DETECTED
    equal = delivered_equal if delivered_equal is not None else (verdict.value == honest_value)
    return TrialClass.BENIGN if equal else TrialClass.FORGERY_SUCCESS


@dataclass(frozen=True)
class AttackOutcome:
    """One attack run: classification, the raw verdict, and what was delivered."""

    classification: TrialClass
    verdict: Verdict
    delivered: Any = None
