"""Reusable homomorphic sub-circuits for the forgery attacks.

Everything here takes the adversary facade (``view``) as its first argument
and only calls facade methods, so the capability gates of the simulator are
the sole authority on what an attack may do.  Rotation-hungry gadgets declare
their stride requirement through :func:`pow2_strides`.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidDivisor, UnsupportedEvenPrime


def pow2_strides(block: int) -> frozenset[int]:
    """Rotation indices {1, 2, 4, ..., block/2} used by the ladder gadgets."""
    if block < 2 or block & (block - 1):
        raise ValueError(f"block size must be a power of two >= 2, got {block}")
    return frozenset(1 << i for i in range(block.bit_length() - 1))


def duplicate_i(view, ct, i: int, block: int):
    """Spread slot ``i`` (within each block) to every slot.

    Mask by the block-periodic elementary vector, then double coverage with
    log2(block) rotate-and-adds.  On block-tiled inputs the wrap-around across
    block boundaries lands on identical values, so the result is exact.
    """
    width = ct.width
    if width % block:
        raise ValueError(f"block {block} does not divide width {width}")
    mask = np.zeros(width, dtype=np.uint64)
    mask[i % block :: block] = 1
    acc = view.cmult(ct, mask)
    stride = 1
    while stride < block:
        acc = view.add(acc, view.rotate(acc, stride))
        stride *= 2
    return acc


def rotsum(view, ct, block: int):
    """Every slot becomes the sum of its block (inputs tiled block-wise)."""
    acc = ct
    stride = 1
    while stride < block:
        acc = view.add(acc, view.rotate(acc, stride))
        stride *= 2
    return acc


def ct_pow(view, ct, e: int):
    """ct^e slot-wise by square-and-multiply; 2·log2(e) mults worst case."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = ct
    while True:
        if e & 1:
            result = base if result is None else view.mult(result, base)
        e >>= 1
        if not e:
            return result
        base = view.mult(base, base)


def ct_geom_sum(view, ct, k: int):
    """1 + ct + ct² + ... + ct^(k-1), division-free doubling ladder.

    Tracks (partial sum, ct^terms) and consumes the bits of k after the top
    one: doubling maps (S, W) to (S + S·W, W²), an extra term appends W.
    """
    if k < 1:
        raise ValueError("term count must be >= 1")
    acc = view.embed_plain(np.ones(ct.width, dtype=np.uint64), key_id=ct.key_id)
    run = ct
    for bit in bin(k)[3:]:
        acc = view.add(acc, view.mult(acc, run))
        run = view.mult(run, run)
        if bit == "1":
            acc = view.add(acc, run)
            run = view.mult(run, ct)
    return acc


def ct_equal(view, a, b):
    """Slot-wise equality indicator over a prime modulus: 1 - (a-b)^(t-1)."""
    t = view.modulus.t
    diff = view.sub(a, b)
    return view.cadd(view.cmult(ct_pow(view, diff, t - 1), t - 1), 1)


def _congruence_scaled(view, z):
    """(1 - z^phi) · sum_{i<phi} (z+1)^i, the scaled congruence probe."""
    mod = view.modulus
    front = view.cadd(view.cmult(ct_pow(view, z, mod.phi), mod.t - 1), 1)
    tail = ct_geom_sum(view, view.cadd(z, 1), mod.phi)
    return view.mult(front, tail)


def ct_equal_scaled_pr(view, a, b):
    """Slot-wise phi(t)·[a ≡ b (mod p)] over t = p^r — congruence, not equality.

    Computes (1 - z^phi)·sum_{i<phi} (z+1)^i with z = a - b.  Unit
    differences are killed by the front factor (z^phi = 1).  On every
    multiple of p the power z^phi vanishes outright and, for odd p, the
    geometric sum telescopes to exactly phi(t): the probe can only read one
    p-adic digit, so differences like 3 vs 0 mod 27 still light up.  Full
    equality needs the peeling loop in :func:`ct_equal_pr`.  For p = 2 a
    nonzero even difference yields 0 or 2^(r-1) unpredictably; all the
    caller may rely on is divisibility by 2^(r-1).
    """
    return _congruence_scaled(view, view.sub(a, b))


def _congruence_flag(view, z):
    """Exact 0/1 slot-wise [z ≡ 0 (mod p)], odd p: probe, divide, rescale."""
    mod = view.modulus
    lowered = view.div_p_power_keep_modulus(_congruence_scaled(view, z), mod.r - 1)
    return rescale_known(view, lowered, mod.p - 1)


def ct_equal_pr(view, a, b):
    """Exact slot-wise equality indicator over t = p^r, p odd.

    No polynomial computes [z = 0] over Z_{p^r} (for any f, f(p^(r-1)) ≡
    f(0) + p^(r-1)·f'(0), so an indicator with f(0) = 1 leaks onto some
    multiple of p^(r-1)), so the indicator is built by peeling one p-adic
    digit per round: flag the slots divisible by p, exact-divide the flagged
    differences by the power already certified, and re-probe the quotient.
    The flag does double duty — it guarantees the divisibility the
    keep-modulus division demands, and it silences the spurious 1 the probe
    reports on the zeroed-out slots.  After r-1 rounds the flag has
    sharpened [z ≡ 0 mod p] into [z = 0].
    """
    mod = view.modulus
    if mod.r < 2:
        raise ValueError("digit peeling needs t = p^r with r > 1")
    if mod.p == 2:
        raise UnsupportedEvenPrime("no unit rescale exists for p = 2")
    z = view.sub(a, b)
    mask = _congruence_flag(view, z)
    for s in range(1, mod.r):
        quotient = view.div_p_power_keep_modulus(view.mult(mask, z), s)
        mask = view.mult(mask, _congruence_flag(view, quotient))
    return mask


def interpolate_affine(view, ct, c0: int, c1: int):
    """Affine polynomial c0 + c1·x applied slot-wise."""
    return view.cadd(view.cmult(ct, c1), c0)


def normalize_k(view, ct, k: int):
    """Collapse slot values known to lie in {0..k} to 0/1, prime modulus.

    Realized as x^(t-1): sends 0 to 0 and every nonzero value to 1; the k
    argument is the caller's contract that no slot wrapped past the modulus.
    """
    t = view.modulus.t
    if not 0 <= k < t:
        raise ValueError(f"value bound {k} outside 0..{t - 1}")
    return ct_pow(view, ct, t - 1)


def rescale_known(view, ct, k: int):
    """Undo a known invertible scalar: ct · k^(-1)."""
    t = view.modulus.t
    return view.cmult(ct, pow(k, -1, t))


def normalize_add_pr(view, ct, c: int):
    """Idempotent-sum repair polynomial: q(0)=0, q(c)=q(2c)=c.

    After adding two ciphertexts whose slots lie in {0, c}, slots lie in
    {0, c, 2c}; applying q restores {0, c}.  Quadratic Lagrange through the
    three nodes, valid whenever p is odd and c is a unit (node differences
    are then units, so the denominators invert even modulo p^r).
    """
    t = view.modulus.t
    p = view.modulus.p
    if p == 2 or c % p == 0:
        raise InvalidDivisor(f"nodes 0, {c}, {2*c} are not separated mod {t}")
    # q(x) = x·(x - 2c)·[c·(c-2c)]^{-1}·c + x·(x-c)·[2c·(2c-c)]^{-1}·c
    inv_a = pow(-c * c, -1, t)        # denominator at node c
    inv_b = pow(2 * c * c, -1, t)     # denominator at node 2c
    la = view.mult(ct, view.cadd(ct, (-2 * c) % t))
    lb = view.mult(ct, view.cadd(ct, (-c) % t))
    return view.add(
        view.cmult(la, (inv_a * c) % t), view.cmult(lb, (inv_b * c) % t)
    )


def _chi_validate(view, d: int):
    mod = view.modulus
    base = mod.t - 1 if mod.is_prime else mod.p - 1
    if d < 1 or base % d:
        raise InvalidDivisor(f"order {d} does not divide {base}")


def chi_a(view, ct, d: int, shift: int = 0):
    """Indicator of the shifted index-d power-residue set, prime modulus.

    chi(x) = d^(-1) · s · sum_{i<d} s^i with s = (x+shift)^(phi/d): exactly 1
    on {x : x+shift a d-th power residue unit}, 0 elsewhere (including 0-a).
    """
    _chi_validate(view, d)
    mod = view.modulus
    s = ct_pow(view, view.cadd(ct, shift), mod.phi // d)
    return rescale_known(view, view.mult(s, ct_geom_sum(view, s, d)), d)


def chi_a_pr(view, ct, d: int, shift: int = 0):
    """Prime-power variant of :func:`chi_a`; d must divide p-1, p odd.

    chi(x) = d^(-1) · y^phi · sum_{i<d} s^i with y = x+shift, s = y^(phi/d);
    the y^phi factor kills non-units and the geometric sum vanishes for units
    outside the subgroup because s-1 is then a unit.
    """
    mod = view.modulus
    if mod.p == 2:
        raise UnsupportedEvenPrime(
            "no closed-form power-residue indicator modulo 2^r"
        )
    _chi_validate(view, d)
    s = ct_pow(view, view.cadd(ct, shift), mod.phi // d)
    front = ct_pow(view, s, d)  # = (x+shift)^phi
    return rescale_known(view, view.mult(front, ct_geom_sum(view, s, d)), d)
