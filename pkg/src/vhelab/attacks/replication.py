"""Forgeries against the replication-check encodings.

All circuits run through the adversary facade.  The packed variant carries a
block of ``n`` slots tiled across the ciphertext width; the per-slot-key
variant carries one width-1 ciphertext per block slot.  Block indices are
0-based throughout.
"""

from __future__ import annotations

import numpy as np

from ..rep import poly_eval_ct
from .gadgets import (
    chi_a,
    chi_a_pr,
    ct_equal,
    ct_equal_pr,
    ct_equal_scaled_pr,
    ct_pow,
    duplicate_i,
    interpolate_affine,
    normalize_k,
    rescale_known,
    rotsum,
)


def cvs(view, ct, i: int, block: int):
    """Common-value-slot probe: equality mask of slot i against the block.

    Decrypts to the common-slot indicator when slot i holds the tiled message
    and to the i-th elementary vector when it holds a (distinct) check value.
    """
    dup = duplicate_i(view, ct, i, block)
    return ct_equal(view, dup, ct)


def cvs_pr(view, ct, i: int, block: int):
    """Prime-power probe with the same decrypted contract as :func:`cvs`.

    Odd p: the digit-peeled equality gadget returns the exact indicator, so
    the output matches :func:`cvs` slot for slot.  p = 2: no unit rescale
    exists, so the probe is the scaled congruence gadget divided down by
    2^(r-1); under the parity-separated encoding (even message, odd check
    values) every message-against-check slot has an odd difference and reads
    exactly 0, so the output is exact except for junk 1s confined to
    check-against-check slots.
    """
    mod = view.modulus
    if mod.r < 2:
        raise ValueError("prime-power probe needs t = p^r with r > 1")
    dup = duplicate_i(view, ct, i, block)
    if mod.p == 2:
        scaled = ct_equal_scaled_pr(view, dup, ct)
        return view.div_p_power_keep_modulus(scaled, mod.r - 1)
    return ct_equal_pr(view, dup, ct)


def recover_sc(view, ct, k: int, block: int):
    """Probe the first k block slots and fuse the hits (prime modulus).

    Each probe contributes (blocksum-1)·probe: elementary-vector misses
    vanish, common-slot hits contribute (n/2-1)·indicator.  The final
    power collapse returns the exact common-slot indicator whenever at
    least one of the first k slots was a common slot, else the zero vector.
    """
    t = view.modulus.t
    if not 1 <= k <= block:
        raise ValueError(f"probe count must be in 1..{block}")
    if k * (block // 2 - 1) >= t:
        raise ValueError("accumulated scale would wrap the modulus")
    acc = None
    for i in range(k):
        probe = cvs(view, ct, i, block)
        weight = view.cadd(rotsum(view, probe, block), t - 1)
        term = view.mult(weight, probe)
        acc = term if acc is None else view.add(acc, term)
    return normalize_k(view, acc, k * (block // 2 - 1))


def _or_fold(view, a, b):
    """Exact OR on 0/1 slot vectors: a + b - a·b."""
    return view.sub(view.add(a, b), view.mult(a, b))


def _pr_hit_flag(view, probe, block: int, probed: int):
    """All-slots flag: 1 iff the probe is the common-slot indicator (odd p).

    Non-degenerate case (p does not divide n/2-1): blocksum-1 lies in
    {0, n/2-1} with an invertible nonzero value, one rescale suffices.

    Degenerate case: mask out one slot j != probed before summing.  A probe
    that is the indicator loses one member for the n/2-1 >= 1 choices of j
    inside it, dropping blocksum-1 to the unit n/2-2, which rescales to
    exactly 1; every other combination yields 0 or a non-unit and is killed
    by the phi-power.  OR-folding over j flags the hit without ever adding
    two indicator multiples in characteristic p.
    """
    mod = view.modulus
    t, phi = mod.t, mod.phi
    half = block // 2
    if (half - 1) % mod.p:
        flag = view.cadd(rotsum(view, probe, block), t - 1)
        return rescale_known(view, flag, half - 1)
    if half < 2:
        # a lone common slot leaves no second member to knock out
        raise ValueError("masked hit flag needs a block of at least 4")
    inv = pow(half - 2, -1, t)
    acc = None
    for j in range(block):
        if j == probed:
            continue  # masking the probed slot of e_i would fake a hit
        mask = np.ones(view.slot_count, dtype=np.uint64)
        mask[j % block :: block] = 0
        masked_sum = view.cadd(rotsum(view, view.cmult(probe, mask), block), t - 1)
        hit = ct_pow(view, view.cmult(masked_sum, inv), phi)
        acc = hit if acc is None else _or_fold(view, acc, hit)
    return acc


def recover_sc_pr(view, ct, k: int, block: int):
    """Prime-power analogue of :func:`recover_sc`, keep-modulus pipeline.

    Odd p: each probe is reduced to an exact 0/1 indicator-or-elementary
    vector, gated by a hit flag, and OR-folded, so the output is exactly the
    common-slot indicator or the zero vector regardless of how many probes
    hit (no characteristic-p cancellation).

    p = 2: no unit-collapse exists, so the probes are simply summed; under
    the parity-separated encoding the result is hit_count·indicator plus
    junk confined to check slots, which the additive forgery turns into a
    guaranteed detection unless every probe hit.
    """
    mod = view.modulus
    if not 1 <= k <= block:
        raise ValueError(f"probe count must be in 1..{block}")
    if mod.p == 2:
        if k >= mod.t:
            raise ValueError("accumulated count would wrap the modulus")
        acc = None
        for i in range(k):
            probe = cvs_pr(view, ct, i, block)
            acc = probe if acc is None else view.add(acc, probe)
        return acc
    acc = None
    for i in range(k):
        probe = cvs_pr(view, ct, i, block)
        gated = view.mult(_pr_hit_flag(view, probe, block, i), probe)
        acc = gated if acc is None else _or_fold(view, acc, gated)
    return acc


def forge_rep(view, ct, f_coeffs, g_coeffs, ct_jsc):
    """Blend two evaluations along a mask: (1-w)·f(ct) + w·g(ct).

    With w the exact common-slot indicator this delivers g(message) on the
    common slots while every check slot still carries f(v_i); with w = 0 it
    degrades to the honest evaluation.  Accepts the packed ciphertext or the
    per-slot-key list (then ct_jsc must be a matching list).
    """
    if isinstance(ct, list):
        return [forge_rep(view, entry, f_coeffs, g_coeffs, w)
                for entry, w in zip(ct, ct_jsc, strict=True)]
    t = view.modulus.t
    eval_f = poly_eval_ct(view, ct, f_coeffs, t)
    eval_g = poly_eval_ct(view, ct, g_coeffs, t)
    w_inv = interpolate_affine(view, ct_jsc, 1, t - 1)  # 1 - w
    return view.add(view.mult(w_inv, eval_f), view.mult(ct_jsc, eval_g))


def _masked_chi(view, ct, d: int, shift: int, block: int | None, chi_fn):
    if isinstance(ct, list):
        return [chi_fn(view, entry, d, shift) for entry in ct]
    w = chi_fn(view, ct, d, shift)
    if block is not None and block < view.slot_count:
        mask = np.zeros(view.slot_count, dtype=np.uint64)
        mask[:block] = 1
        w = view.cmult(w, mask)
    return w


def extended_attack(view, ct, d: int, shift: int, block: int | None = None):
    """Slot-wise membership mask for the shifted power-residue set (prime t).

    Returns the w to feed :func:`forge_rep`; on the packed encoding the mask
    is zeroed outside the first block so the forgery stays localized.  Works
    on the per-slot-key list because it never rotates.
    """
    return _masked_chi(view, ct, d, shift, block, chi_a)


def extended_attack_pr(view, ct, d: int, shift: int, block: int | None = None):
    """Prime-power variant of :func:`extended_attack` (odd p, d | p-1)."""
    return _masked_chi(view, ct, d, shift, block, chi_a_pr)
