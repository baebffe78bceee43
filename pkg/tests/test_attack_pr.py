"""Forgery circuits over prime-power moduli: the digit-peeled probe, the
hit-gated recovery fuse for odd p, and the parity-split additive route for
p = 2."""

import itertools

import numpy as np
import pytest

from vhelab.attacks import (
    cvs,
    cvs_pr,
    extended_attack_pr,
    forge_rep,
    recover_sc_pr,
)
from vhelab.modring import factor_prime_power, subgroup_members
from vhelab.rep import RepParams, decrypt_response, rep_encode, rep_verify

from conftest import enc, make_ctx


def _encode_block(ctx, secret, m, t, block):
    vals = [m] * block
    for rank, j in enumerate(sorted(secret)):
        vals[j] = (m + 1 + rank) % t
    return enc(ctx, vals)


class TestCvsPr:
    def test_worked_example(self):
        # t = 27, block 4, S = {2, 3}: probing the message slot 1
        ctx = make_ctx(27, 4, rtk=4)
        view = ctx.adversary_view()
        ct = enc(ctx, [5, 5, 9, 26])
        assert ctx.decrypt(cvs_pr(view, ct, 1, 4)).tolist() == [1, 1, 0, 0]
        assert ctx.decrypt(cvs_pr(view, ct, 2, 4)).tolist() == [0, 0, 1, 0]

    @pytest.mark.parametrize("t", [9, 25, 27])
    def test_matches_prime_contract_exhaustively(self, t):
        # the odd-p probe must agree with the prime-field probe's contract on
        # every 2-subset of a 4-block, including check values congruent mod p
        ctx = make_ctx(t, 4, rtk=4)
        view = ctx.adversary_view()
        p = factor_prime_power(t).p
        m = 2 * p  # a non-unit message, stressing the congruence classes
        for secret in itertools.combinations(range(4), 2):
            ct = _encode_block(ctx, set(secret), m, t, 4)
            block = ctx.decrypt(ct).tolist()
            for i in range(4):
                want = (
                    [1 if block[j] == block[i] else 0 for j in range(4)]
                    if block[i] == m
                    else [1 if j == i else 0 for j in range(4)]
                )
                got = ctx.decrypt(cvs_pr(view, ct, i, 4)).tolist()
                assert got == want, (t, secret, i)

    def test_requires_prime_power(self):
        ctx = make_ctx(7, 4, rtk=4)
        with pytest.raises(ValueError):
            cvs_pr(ctx.adversary_view(), enc(ctx, [1, 2, 3, 4]), 0, 4)

    def test_even_probe_is_exact_on_parity_split(self):
        # p = 2 contract: with even message and odd checks, a message-slot
        # probe is the exact indicator; junk can only sit on check slots
        t = 16
        ctx = make_ctx(t, 4, rtk=4)
        view = ctx.adversary_view()
        ct = enc(ctx, [6, 6, 3, 9])
        assert ctx.decrypt(cvs_pr(view, ct, 0, 4)).tolist() == [1, 1, 0, 0]
        got = ctx.decrypt(cvs_pr(view, ct, 2, 4)).tolist()
        assert got[0] == 0 and got[1] == 0 and got[2] == 1


class TestRecoverScPrOdd:
    @pytest.mark.parametrize("t", [9, 25, 27])
    def test_exhaustive_small(self, t):
        ctx = make_ctx(t, 4, rtk=4)
        view = ctx.adversary_view()
        p = factor_prime_power(t).p
        for secret in itertools.combinations(range(4), 2):
            for k in (1, 2, 3):
                ct = _encode_block(ctx, set(secret), p, t, 4)
                want = (
                    [0] * 4
                    if set(range(k)) <= set(secret)
                    else [0 if j in secret else 1 for j in range(4)]
                )
                got = ctx.decrypt(recover_sc_pr(view, ct, k, 4)).tolist()
                assert got == want, (t, secret, k)

    def test_degenerate_block_masked_route(self):
        # t = 27, n = 8: p = 3 divides n/2 - 1 = 3, forcing the masked flag
        ctx = make_ctx(27, 8, rtk=8)
        view = ctx.adversary_view()
        secret = {1, 3, 5, 7}
        ct = _encode_block(ctx, secret, 6, 27, 8)
        got = ctx.decrypt(recover_sc_pr(view, ct, 1, 8))
        assert got.tolist() == [1, 0, 1, 0, 1, 0, 1, 0]
        # all-miss: every probed slot is a check slot, the fuse stays zero
        got = ctx.decrypt(recover_sc_pr(view, _encode_block(ctx, {0, 1, 2, 3}, 6, 27, 8), 4, 8))
        assert got.tolist() == [0] * 8

    def test_degenerate_needs_block_of_four(self):
        # t = 9, n = 2: n/2 - 1 = 0 is divisible by 3 and no mask can help
        ctx = make_ctx(9, 2, rtk=2)
        view = ctx.adversary_view()
        ct = enc(ctx, [3, 4])
        with pytest.raises(ValueError):
            recover_sc_pr(view, ct, 1, 2)

    def test_k_range(self):
        ctx = make_ctx(27, 4, rtk=4)
        view = ctx.adversary_view()
        ct = enc(ctx, [1, 2, 3, 4])
        with pytest.raises(ValueError):
            recover_sc_pr(view, ct, 0, 4)
        with pytest.raises(ValueError):
            recover_sc_pr(view, ct, 5, 4)


class TestRecoverScPrEven:
    def test_all_hits_sum_to_k_times_indicator(self):
        t = 16
        ctx = make_ctx(t, 4, rtk=4)
        view = ctx.adversary_view()
        ct = enc(ctx, [6, 6, 3, 9])  # S = {2, 3}
        got = ctx.decrypt(recover_sc_pr(view, ct, 2, 4))
        assert got.tolist() == [2, 2, 0, 0]

    def test_miss_leaves_check_slot_residue(self):
        t = 16
        ctx = make_ctx(t, 4, rtk=4)
        view = ctx.adversary_view()
        ct = enc(ctx, [3, 6, 6, 9])  # S = {0, 3}; probe 0 misses
        got = ctx.decrypt(recover_sc_pr(view, ct, 1, 4))
        assert got[0] == 1  # e_0 from the missed check-slot probe
        assert got[1] == 0 and got[2] == 0

    def test_count_wrap_guard(self):
        # k within the block but >= t: the summed hit count could wrap Z_8
        ctx = make_ctx(8, 16, rtk=16)
        view = ctx.adversary_view()
        ct = enc(ctx, [2] * 8 + [1, 3, 5, 7, 1, 3, 5, 7])
        with pytest.raises(ValueError):
            recover_sc_pr(view, ct, 9, 16)


class TestEndToEndForgeryPr:
    def _run(self, rng, t, n, k, trials=60):
        from vhelab.rep import poly_eval_plain

        mod = factor_prime_power(t)
        params = RepParams(slot_count=n, block=n, modulus=mod)
        ctx = make_ctx(t, n, rtk=n)
        view = ctx.adversary_view()
        f, g = [3, 1], [4, 1]
        outcomes = {"success": 0, "detected": 0, "benign": 0}
        for _ in range(trials):
            m = int(rng.integers(0, t))
            ct, state = rep_encode(ctx, params, m, rng)
            state.precompute(f, t)
            w = recover_sc_pr(view, ct, k, n)
            forged = forge_rep(view, ct, f, g, w)
            verdict = rep_verify(decrypt_response(ctx, forged), state, params)
            if not verdict.accepted:
                outcomes["detected"] += 1
            elif verdict.value == poly_eval_plain(g, m, t):
                outcomes["success"] += 1
            else:
                outcomes["benign"] += 1
        return outcomes

    def test_certain_success_when_k_exceeds_half(self, rng):
        # k = 3 probes over a 4-block: some probe must hit a common slot
        out = self._run(rng, 27, 4, 3, trials=40)
        assert out == {"success": 40, "detected": 0, "benign": 0}

    def test_odd_p_never_detected(self, rng):
        # a missed probe collapses the mask to zero, so the delivered value
        # degrades to the honest one -- accepted, harmless.  The verifier
        # never catches the odd-p circuit in the act.
        out = self._run(rng, 25, 4, 1, trials=80)
        assert out["detected"] == 0
        assert out["success"] + out["benign"] == 80
        assert out["success"] > 0 and out["benign"] > 0


class TestExtendedAttackPr:
    def test_mask_matches_membership(self, rng):
        t, d = 25, 4
        ctx = make_ctx(t, 6, rtk=8)
        view = ctx.adversary_view()
        vals = [int(v) for v in rng.integers(0, t, 6)]
        got = ctx.decrypt(extended_attack_pr(view, enc(ctx, vals), d, 0)).tolist()
        members = subgroup_members(factor_prime_power(t), d)
        assert got == [1 if v in members else 0 for v in vals]

    def test_shifted_and_blocked(self):
        t, d, a = 27, 2, 4
        ctx = make_ctx(t, 8, rtk=8)
        view = ctx.adversary_view()
        members = subgroup_members(factor_prime_power(t), d)
        vals = [(x - a) % t for x in [1, 4, 2, 5]] * 2
        got = ctx.decrypt(
            extended_attack_pr(view, enc(ctx, vals), d, a, block=4)
        ).tolist()
        want = [1 if (v + a) % t in members else 0 for v in vals[:4]] + [0] * 4
        assert got == want
