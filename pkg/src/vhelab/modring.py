"""Exact residue arithmetic over Z_t for t = p^r, plus the algebraic gadgets
(equality indicators, roots-of-unity characteristic functions) every forgery
circuit in this laboratory is built from.

All functions here are plaintext-side references: they compute with Python
integers and are the oracles the homomorphic circuit variants are tested
against. Everything is exact — no floating point, no probabilistic identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidDivisor,
    NonPrimeModulus,
    PrimeModulus,
    UnsupportedEvenPrime,
)

_DESK_PRIME_BOUND = 1 << 32


def _is_prime_trial_division(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Modulus:
    """Plaintext modulus t = p^r with its unit-group order phi = (p-1)·p^(r-1).

    Primality of p is verified by trial division below 2^32 (every modulus in
    the experiments is far below that); larger p must be asserted by the
    caller via `assume_prime=True`.
    """

    p: int
    r: int = 1

    def __init__(self, p: int, r: int = 1, assume_prime: bool = False):
        if r < 1:
            raise ValueError(f"exponent r must be >= 1, got {r}")
        if p < _DESK_PRIME_BOUND:
            if not _is_prime_trial_division(p):
                raise ValueError(f"p = {p} is not prime")
        elif not assume_prime:
            raise ValueError(f"p = {p} exceeds the trial-division bound; pass assume_prime=True")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)

    @property
    def t(self) -> int:
        return self.p**self.r

    @property
    def phi(self) -> int:
        return (self.p - 1) * self.p ** (self.r - 1)

    @property
    def is_prime(self) -> bool:
        return self.r == 1

    def residue(self, value: int) -> "Residue":
        return Residue(value, self)

    def __repr__(self) -> str:
        return f"Modulus({self.p}^{self.r})" if self.r > 1 else f"Modulus({self.p})"


class Residue:
    """An element of Z_t tied to its Modulus; supports +, -, *, ** and unit tests.

    Mixed-modulus arithmetic raises ValueError; integers on either side are
    reduced into the ring first.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: Modulus):
        self.value = value % modulus.t
        self.modulus = modulus

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"mixed moduli: {self.modulus} vs {other.modulus}")
            return other
        return Residue(int(other), self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return Residue(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Residue(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Residue(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, e: int):
        return pow_mod(self, e)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus.t
        return (
            isinstance(other, Residue)
            and self.modulus == other.modulus
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus.t})"

    def is_unit(self) -> bool:
        return self.value % self.modulus.p != 0

    def inverse(self) -> "Residue":
        return Residue(pow(self.value, -1, self.modulus.t), self.modulus)


def pow_mod(x: Residue, e: int) -> Residue:
    """x^e by square-and-multiply; e >= 0; pow_mod(x, 0) = 1."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return Residue(pow(x.value, e, x.modulus.t), x.modulus)


def power_series_sum(w: int, k: int, t: int) -> int:
    """Sum of the geometric series 1 + w + ... + w^(k-1) mod t, division-free.

    Uses the binary doubling ladder S_{2m} = S_m·(1 + w^m), so it costs
    O(log k) multiplications and stays correct when w−1 is a zero divisor
    (which is exactly why the closed form (w^k−1)/(w−1) is off the table for
    prime-power moduli).
    """
    if k < 0:
        raise ValueError("series length must be non-negative")
    if k == 0:
        return 0
    s, big_w = 1, w % t  # invariant: s = S_m(w), big_w = w^m for the processed prefix m
    for bit in bin(k)[3:]:
        s = (s + s * big_w) % t
        big_w = (big_w * big_w) % t
        if bit == "1":
            s = (s + big_w) % t
            big_w = (big_w * w) % t
    return s


def eq_indicator(x: Residue, y: Residue) -> Residue:
    """Equality indicator over a prime field: 1 − (x−y)^(t−1).

    Fermat's little theorem sends every nonzero difference to 1, so the result
    is exactly [x = y]. Prime moduli only.
    """
    if x.modulus != y.modulus:
        raise ValueError("operands under different moduli")
    mod = x.modulus
    if not mod.is_prime:
        raise NonPrimeModulus(f"eq_indicator needs a prime modulus, got {mod}")
    z = x - y
    return 1 - pow_mod(z, mod.t - 1)


def scaled_eq_indicator_pr(x: Residue, y: Residue) -> Residue:
    """phi(t)-scaled congruence probe for prime-power moduli.

    Computes a(x−y) with a(z) = (1 − z^phi) · Σ_{i=0}^{phi−1} (z+1)^i.  For
    odd p this equals phi(t) exactly when x ≡ y (mod p) and 0 otherwise —
    note mod p, not mod p^r: the probe reads a single p-adic digit, e.g.
    a(3) = 6 = phi(9) over Z_9 even though 3 ≠ 0 there.  For p = 2 a
    nonzero even difference gives 0 or 2^(r-1) unpredictably; only
    divisibility by 2^(r-1) is guaranteed.  The sum runs through the
    division-free ladder, so the whole thing costs O(log t) multiplications.
    """
    if x.modulus != y.modulus:
        raise ValueError("operands under different moduli")
    mod = x.modulus
    if mod.is_prime:
        raise PrimeModulus(f"scaled_eq_indicator_pr needs r > 1, got {mod}")
    t, phi = mod.t, mod.phi
    z = (x - y).value
    left = (1 - pow(z, phi, t)) % t
    right = power_series_sum(z + 1, phi, t)
    return Residue(left * right, mod)


def _subgroup_exponent(mod: Modulus, d: int) -> int:
    """phi(t)/d, validating d | divisor-group order."""
    if d <= 0 or mod.phi % d != 0:
        raise InvalidDivisor(f"d = {d} does not divide phi({mod.t}) = {mod.phi}")
    return mod.phi // d


def char_fn_prime(x: Residue, d: int) -> Residue:
    """Characteristic function of U_{t,d} = {units with x^(phi/d) = 1}, prime t.

    Evaluates the unit-filtered sum Σ_{i=1}^{d} (x^{phi/d})^i — identical to the
    textbook Σ_{i=0}^{d−1} form on units and exactly 0 at x = 0 — then scales by
    d^{-1} to expose the 0/1 value.
    """
    mod = x.modulus
    if not mod.is_prime:
        raise NonPrimeModulus(f"char_fn_prime needs a prime modulus, got {mod}")
    if d > 0 and (mod.p - 1) % d != 0:
        raise InvalidDivisor(f"d = {d} does not divide p-1 = {mod.p - 1}")
    step = _subgroup_exponent(mod, d)
    t = mod.t
    s = pow(x.value, step, t)
    total = (s * power_series_sum(s, d, t)) % t
    return Residue(total * pow(d, -1, t), mod)


def char_fn_prime_power(x: Residue, d: int) -> Residue:
    """Characteristic function of U_{t,d} for t = p^r with odd p and d | p−1.

    Uses d·chi(x) = x^phi · Σ_{i=0}^{d−1} (x^{phi/d})^i; the leading x^phi
    factor annihilates every non-unit (phi ≥ r for odd p), so no unit filter
    is needed. p = 2 yields no meaningful subgroup test and is rejected.
    """
    mod = x.modulus
    if mod.p == 2:
        raise UnsupportedEvenPrime("characteristic functions are undefined for p = 2")
    if d <= 0 or (mod.p - 1) % d != 0:
        raise InvalidDivisor(f"d = {d} does not divide p-1 = {mod.p - 1}")
    step = _subgroup_exponent(mod, d)
    t = mod.t
    s = pow(x.value, step, t)
    total = (pow(x.value, mod.phi, t) * power_series_sum(s, d, t)) % t
    return Residue(total * pow(d, -1, t), mod)


def subgroup_members(mod: Modulus, d: int) -> frozenset[int]:
    """Brute-force U_{t,d} = {x unit : x^(phi/d) = 1}; test oracle and support-size helper."""
    step = _subgroup_exponent(mod, d)
    t = mod.t
    return frozenset(
        x for x in range(t) if x % mod.p != 0 and pow(x, step, t) == 1
    )


def factor_prime_power(t: int) -> Modulus:
    """Recognize t = p^r by trial division and return the Modulus.

    Raises ValueError when t has two distinct prime factors (no plaintext
    ring in this laboratory does).
    """
    if t < 2:
        raise ValueError(f"modulus must be >= 2, got {t}")
    p = t
    for f in range(2, t):
        if f * f > t:
            break
        if t % f == 0:
            p = f
            break
    r = 0
    rest = t
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise ValueError(f"{t} is not a prime power (leftover factor {rest})")
    return Modulus(p, r)
