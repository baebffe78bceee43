"""Bit-conditioned shift forgery against the OPRF protocol: crafted-table
classification, validation, and agreement between the full protocol run and
the vectorized fast replay."""

import numpy as np
import pytest

from vhelab.attacks import vaddg_attack
from vhelab.harness import seeds
from vhelab.harness.config import config_from_dict, normalize_config
from vhelab.harness.experiments import _vaddg_fast_counts, run_trial, vaddg_fast_trial
from vhelab.outcomes import TrialClass
from vhelab.vaddg import (
    N_IN,
    N_OUT,
    PrfKeyModel,
    VaddgParams,
    build_query,
    client_verify,
    publish_pairs,
)

from conftest import make_ctx


def _bit_ctx():
    return make_ctx(2, 1, has_btk=True)


class TestValidation:
    def test_bit_index_range(self, rng):
        ctx = _bit_ctx()
        with pytest.raises(ValueError):
            vaddg_attack(ctx.adversary_view(), PrfKeyModel(0), [], N_IN, [1] * N_OUT)

    def test_trit_vector_shape(self):
        ctx = _bit_ctx()
        view = ctx.adversary_view()
        with pytest.raises(ValueError):
            vaddg_attack(view, PrfKeyModel(0), [], 0, [1] * 10)
        with pytest.raises(ValueError):
            vaddg_attack(view, PrfKeyModel(0), [], 0, [0] * N_OUT)


class TestCraftedClassification:
    """Hand-built tables and picks so every outcome branch is forced."""

    def _crafted(self, rng, msg_bits_u, pick_bits_u, u=5, nu=2):
        key = PrfKeyModel(13)
        alpha, beta = len(msg_bits_u), len(pick_bits_u)
        kappa = max(beta, 1)
        params = VaddgParams(alpha=alpha, beta=beta, nu=nu, kappa=kappa)

        table_inputs = rng.integers(0, 2, size=(kappa, N_IN), dtype=np.uint8)
        for row, bit in enumerate(pick_bits_u):
            table_inputs[row, u] = bit
        table = publish_pairs(key, kappa, inputs=table_inputs)

        msgs = rng.integers(0, 2, size=(alpha, N_IN), dtype=np.uint8)
        for row, bit in enumerate(msg_bits_u):
            msgs[row, u] = bit
        while len({r.tobytes() for r in msgs}) != alpha:  # pragma: no cover
            msgs = rng.integers(0, 2, size=(alpha, N_IN), dtype=np.uint8)
            for row, bit in enumerate(msg_bits_u):
                msgs[row, u] = bit

        ctx = _bit_ctx()
        q = build_query(ctx, params, msgs, table, rng, picks=list(range(beta)))
        trits = [1] + [0] * (N_OUT - 1)
        forged = vaddg_attack(ctx.adversary_view(), key, q.cts, u, trits)
        verdict = client_verify(ctx, q, forged, table)
        return key, msgs, verdict

    def test_detected_when_any_pick_has_bit_set(self, rng):
        _, _, verdict = self._crafted(rng, msg_bits_u=[0, 1], pick_bits_u=[0, 1])
        assert not verdict.accepted

    def test_success_when_picks_clear_and_message_hit(self, rng):
        key, msgs, verdict = self._crafted(rng, msg_bits_u=[1, 0], pick_bits_u=[0, 0])
        assert verdict.accepted
        honest = key.eval_many(msgs)
        assert not np.array_equal(verdict.value, honest)  # row 0 shifted
        assert np.array_equal(verdict.value[1], honest[1])  # row 1 untouched

    def test_benign_when_no_bit_set_anywhere(self, rng):
        key, msgs, verdict = self._crafted(rng, msg_bits_u=[0, 0], pick_bits_u=[0, 0])
        assert verdict.accepted
        assert np.array_equal(verdict.value, key.eval_many(msgs))

    def test_copies_never_disagree(self, rng):
        # all copies of one message get the same shift, so the copy check
        # cannot be the thing that fires
        _, _, verdict = self._crafted(rng, msg_bits_u=[1], pick_bits_u=[], nu=3)
        assert verdict.accepted


class TestFastReplayAgreement:
    CFG = dict(scheme="vaddg", alpha=8, beta=3, nu=2, kappa=256, trials=40)

    def test_full_equals_fast_per_seed(self):
        cfg = config_from_dict(self.CFG)
        for seed in seeds.trial_seeds_array(0, 40).tolist():
            assert run_trial(cfg, seed) == vaddg_fast_trial(cfg, seed), seed

    def test_scalar_replay_matches_vectorized_counts(self):
        cfg = normalize_config(config_from_dict({**self.CFG, "trials": 3000,
                                                 "fast_trial": True}))
        from collections import Counter

        scalar = Counter(
            vaddg_fast_trial(cfg, int(s)).value
            for s in seeds.trial_seeds_array(cfg.master_seed, cfg.trials)
        )
        assert scalar == _vaddg_fast_counts(cfg)

    def test_classes_cover_all_outcomes(self):
        # alpha = beta = 1 puts every class at probability >= 1/4
        cfg = config_from_dict({**self.CFG, "alpha": 1, "beta": 1, "trials": 1})
        seen = {vaddg_fast_trial(cfg, seed) for seed in range(300)}
        assert TrialClass.FORGERY_SUCCESS in seen
        assert TrialClass.DETECTED in seen
        assert TrialClass.BENIGN in seen
