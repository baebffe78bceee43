"""Exhaustive small-modulus checks for the plaintext-identity toolbox.

Every identity the ciphertext gadgets lean on is re-verified here against
brute-force ground truth, over every element of a few small rings.  The
implementations under test are injectable so the suite can demonstrate that
it actually catches a broken variant.
"""

from __future__ import annotations

import math

from .. import modring

EQ_MODULI = (7, 13, 31)
SCALED_MODULI = (9, 25, 27)
CHI_PRIME_MODULI = (7, 13, 31)
CHI_PRIME_POWER_MODULI = (9, 25, 27)

_MAX_RECORDED = 50


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _record(results: dict, case: dict) -> None:
    results["failed"] += 1
    if len(results["failures"]) < _MAX_RECORDED:
        results["failures"].append(case)


def _new_result() -> dict:
    return {"cases": 0, "failed": 0, "failures": []}


def _check_eq(impl) -> dict:
    res = _new_result()
    for t in EQ_MODULI:
        mod = modring.Modulus(t)
        for x in range(t):
            for y in range(t):
                want = 1 if x == y else 0
                got = int(impl(mod.residue(x), mod.residue(y)))
                res["cases"] += 1
                if got != want:
                    _record(res, {"t": t, "x": x, "y": y, "got": got, "want": want})
    return res


def _check_scaled(impl) -> dict:
    # The scaled probe detects congruence mod p, not equality mod p^r.
    res = _new_result()
    for t in SCALED_MODULI:
        mod = modring.factor_prime_power(t)
        want_hit = mod.phi % t
        for x in range(t):
            for y in range(t):
                want = want_hit if (x - y) % mod.p == 0 else 0
                got = int(impl(mod.residue(x), mod.residue(y)))
                res["cases"] += 1
                if got != want:
                    _record(res, {"t": t, "x": x, "y": y, "got": got, "want": want})
    return res


def _power_residues(mod: modring.Modulus, d: int) -> set[int]:
    t = mod.t
    return {pow(y, d, t) for y in range(1, t) if math.gcd(y, t) == 1}


def _check_chi_prime(impl) -> dict:
    res = _new_result()
    for t in CHI_PRIME_MODULI:
        mod = modring.Modulus(t)
        for d in _divisors(t - 1):
            members = _power_residues(mod, d)
            if len(members) != (t - 1) // d:
                _record(res, {"t": t, "d": d, "got": len(members),
                              "want": (t - 1) // d, "what": "subgroup size"})
            for x in range(t):
                want = 1 if x in members else 0
                got = int(impl(mod.residue(x), d))
                res["cases"] += 1
                if got != want:
                    _record(res, {"t": t, "d": d, "x": x, "got": got, "want": want})
    return res


def _check_chi_prime_power(impl) -> dict:
    res = _new_result()
    for t in CHI_PRIME_POWER_MODULI:
        mod = modring.factor_prime_power(t)
        for d in _divisors(mod.p - 1):
            members = _power_residues(mod, d)
            if len(members) != mod.phi // d:
                _record(res, {"t": t, "d": d, "got": len(members),
                              "want": mod.phi // d, "what": "subgroup size"})
            for x in range(t):
                want = 1 if x in members else 0
                got = int(impl(mod.residue(x), d))
                res["cases"] += 1
                if got != want:
                    _record(res, {"t": t, "d": d, "x": x, "got": got, "want": want})
    return res


def lemma_suite(eq=None, scaled=None, chi_p=None, chi_pp=None) -> dict:
    """Run every lemma check; pass replacements to test the suite itself."""
    return {
        "eq_indicator": _check_eq(eq or modring.eq_indicator),
        "scaled_eq_indicator": _check_scaled(scaled or modring.scaled_eq_indicator_pr),
        "chi_prime": _check_chi_prime(chi_p or modring.char_fn_prime),
        "chi_prime_power": _check_chi_prime_power(chi_pp or modring.char_fn_prime_power),
    }


def suite_passed(results: dict) -> bool:
    return all(entry["failed"] == 0 for entry in results.values())
