"""Switch-polynomial forgery against the checksum-polynomial encoding: the
attack builds P with P(0) = 0 and P(alpha) = 1 without knowing alpha, at a
fixed requadratization budget."""

import numpy as np
import pytest

from vhelab.attacks import pe_attack
from vhelab.errors import MissingReqOracle
from vhelab.modring import Modulus
from vhelab.pe import (
    PeSecret,
    _raw_eval,
    make_req_oracle,
    pe_encode,
    pe_eval_poly,
    pe_verify,
)
from vhelab.rep import poly_eval_plain

from conftest import make_ctx


def _session(rng, t=65537, width=4, **caps):
    mod = Modulus(t)
    alpha = int(rng.integers(1, t))
    while alpha % mod.p == 0:  # pragma: no cover
        alpha = int(rng.integers(1, t))
    check = rng.integers(0, t, size=width, dtype=np.uint64)
    secret = PeSecret(alpha, check, mod, rng)
    ctx = make_ctx(t, width, has_req_oracle=True, **caps)
    return ctx, secret


class TestSwitchPolynomial:
    def test_forged_polynomial_is_a_switch(self, rng):
        # run the attack, then evaluate the delivered polynomial's raw payload
        # at 0 and alpha: value track forged, check track preserved
        t = 65537
        ctx, secret = _session(rng)
        view = ctx.adversary_view()
        m = rng.integers(0, t, 4, dtype=np.uint64)
        F = pe_encode(ctx, secret, m)
        f, g = [3, 1, 4], [9, 2]
        honest = pe_eval_poly(view, F, f)
        oracle = make_req_oracle(view, secret)
        forged = pe_attack(view, honest, [F], g, oracle)
        assert forged.degree <= 4
        # delivered value track: g(m)
        want_g = [poly_eval_plain(g, int(x), t) for x in m]
        assert _raw_eval(forged, 0).tolist() == want_g
        # de-blinded check track: f(v) -- the verifier's accept condition
        fv = np.array(
            [poly_eval_plain(f, int(v), t) for v in secret.check_vector],
            dtype=np.uint64,
        )
        verdict = pe_verify(forged, secret, fv)
        assert verdict.accepted
        assert verdict.value.tolist() == want_g

    def test_succeeds_for_every_message(self, rng):
        t = 65537
        for _ in range(20):
            ctx, secret = _session(rng, width=2)
            view = ctx.adversary_view()
            m = rng.integers(0, t, 2, dtype=np.uint64)
            F = pe_encode(ctx, secret, m)
            f, g = [0, 1], [1, 1]  # g(x) = x + 1 != f(x) = x everywhere
            honest = pe_eval_poly(view, F, f)
            forged = pe_attack(view, honest, [F], g, make_req_oracle(view, secret))
            fv = secret.check_vector
            verdict = pe_verify(forged, secret, fv)
            assert verdict.accepted
            assert verdict.value.tolist() == ((m + 1) % t).tolist()


class TestReqBudget:
    def test_exactly_sixteen_calls_at_binary_order(self, rng):
        # phi(65537) = 2^16: square 16 times, no odd-bit multiplies
        ctx, secret = _session(rng)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [1, 2, 3, 4])
        honest = pe_eval_poly(view, F, [3, 1])
        before = secret.req_calls
        pe_attack(view, honest, [F], [5], make_req_oracle(view, secret))
        assert secret.req_calls - before == 16
        assert ctx.counters["req"] == 16

    def test_call_count_follows_binary_expansion(self, rng):
        # t = 13: phi = 12 = 0b1100 -> bits after the leading one are 100:
        # 3 squarings + 1 odd-bit multiply = 4 oracle calls
        ctx, secret = _session(rng, t=13, width=2)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [5, 7])
        honest = pe_eval_poly(view, F, [1, 1])
        pe_attack(view, honest, [F], [2], make_req_oracle(view, secret))
        assert secret.req_calls == 4

    def test_honest_evaluation_needs_no_oracle(self, rng):
        ctx, secret = _session(rng)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [1, 2, 3, 4])
        pe_eval_poly(view, F, [3, 1, 4, 1, 5])  # quartic: still within the cap
        assert secret.req_calls == 0
        assert ctx.counters.get("req", 0) == 0


class TestCapabilityGate:
    def test_attack_dies_without_oracle(self, rng):
        t = 65537
        mod = Modulus(t)
        alpha = 3
        secret = PeSecret(alpha, [1, 2], mod, rng)
        ctx = make_ctx(t, 2)  # has_req_oracle=False
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [7, 8])
        honest = pe_eval_poly(view, F, [3, 1])
        oracle = make_req_oracle(view, secret)
        with pytest.raises(MissingReqOracle):
            pe_attack(view, honest, [F], [5], oracle)
