"""Polynomial encoding: interpolation, degree discipline, the blinding
requadratization oracle, and the evaluate-at-secret-point verifier."""

import numpy as np
import pytest

from vhelab.errors import DegreeOverflow, MissingReqOracle
from vhelab.modring import Modulus
from vhelab.pe import (
    CtPoly,
    PeSecret,
    _raw_eval,
    bind_session,
    make_req_oracle,
    pe_add,
    pe_cmult,
    pe_encode,
    pe_eval_poly,
    pe_mult,
    pe_sub,
    pe_verify,
    req,
)
from vhelab.rep import poly_eval_plain

from conftest import make_ctx


def _session(t=65537, width=4, alpha=None, v=None, seed=7, **caps):
    mod = Modulus(t) if t in (2, 3, 5, 7, 257, 65537) else None
    if mod is None:
        from vhelab.modring import factor_prime_power

        mod = factor_prime_power(t)
    rng = np.random.default_rng(seed)
    if alpha is None:
        alpha = int(rng.integers(1, t))
    if v is None:
        v = rng.integers(0, t, size=width, dtype=np.uint64)
    secret = PeSecret(alpha, v, mod, rng)
    ctx = make_ctx(t, width, **caps)
    return ctx, secret


class TestSecretAndPoly:
    def test_alpha_must_be_unit(self):
        mod = Modulus(3, 3)
        with pytest.raises(ValueError):
            PeSecret(9, [1], mod, np.random.default_rng(0))
        PeSecret(10, [1], mod, np.random.default_rng(0))  # 10 is a unit mod 27

    def test_alpha_reduced(self):
        s = PeSecret(65537 + 5, [0], Modulus(65537), np.random.default_rng(0))
        assert s.alpha == 5

    def test_ctpoly_needs_coeffs(self):
        with pytest.raises(ValueError):
            CtPoly([])

    def test_ctpoly_degree_cap(self):
        ctx = make_ctx(7, 1)
        coeffs = [ctx.encrypt_vec(0, np.array([1], dtype=np.uint64)) for _ in range(6)]
        with pytest.raises(DegreeOverflow):
            CtPoly(coeffs)
        assert CtPoly(coeffs[:5]).degree == 4

    def test_ctpoly_rejects_mixed_keys(self):
        ctx = make_ctx(7, 1, num_keys=2)
        a = ctx.encrypt_vec(0, np.array([1], dtype=np.uint64))
        b = ctx.encrypt_vec(1, np.array([1], dtype=np.uint64))
        with pytest.raises(ValueError):
            CtPoly([a, b])


class TestEncode:
    def test_interpolation_frozen(self):
        # t=7, alpha=3, m=1, v=6: slope = (6-1) * 3^{-1} = 5 * 5 = 25 = 4
        ctx, _ = _session(t=7, width=1)
        secret = PeSecret(3, [6], Modulus(7), np.random.default_rng(0))
        ctx2 = make_ctx(7, 1)
        F = pe_encode(ctx2, secret, [1])
        assert ctx2.decrypt(F.coeffs[0]).tolist() == [1]
        assert ctx2.decrypt(F.coeffs[1]).tolist() == [4]
        assert _raw_eval(F, 0).tolist() == [1]
        assert _raw_eval(F, 3).tolist() == [6]

    def test_endpoints_hold_vector_wide(self, rng):
        ctx, secret = _session(width=8)
        m = rng.integers(0, 65537, 8, dtype=np.uint64)
        F = pe_encode(ctx, secret, m)
        assert F.degree == 1
        assert np.array_equal(_raw_eval(F, 0), m)
        assert np.array_equal(_raw_eval(F, secret.alpha), secret.check_vector)

    def test_encode_binds_session(self):
        ctx, secret = _session()
        pe_encode(ctx, secret, [1, 2, 3, 4])
        assert ctx._pe_alpha == secret.alpha


class TestArithmetic:
    def test_ring_ops_act_pointwise(self, rng):
        t = 257
        ctx, secret = _session(t=t, width=3)
        m1 = rng.integers(0, t, 3, dtype=np.uint64)
        m2 = rng.integers(0, t, 3, dtype=np.uint64)
        view = ctx.adversary_view()
        F, G = pe_encode(ctx, secret, m1), pe_encode(ctx, secret, m2)
        a = secret.alpha
        cases = {
            "add": (pe_add(view, F, G), (m1 + m2) % t),
            "sub": (pe_sub(view, F, G), (m1 + t - m2) % t),
            "cmult": (pe_cmult(view, F, 5), m1 * 5 % t),
            "mult": (pe_mult(view, F, G), m1 * m2 % t),
        }
        for name, (H, want0) in cases.items():
            assert _raw_eval(H, 0).tolist() == want0.tolist(), name
        # products track the check vector at alpha as well
        assert (
            _raw_eval(cases["mult"][0], a).tolist()
            == (secret.check_vector * secret.check_vector % t).tolist()
        )

    def test_mult_degree_cap(self):
        ctx, secret = _session(width=1)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [2])
        sq = pe_mult(view, F, F)
        quartic = pe_mult(view, sq, sq)
        assert quartic.degree == 4
        with pytest.raises(DegreeOverflow):
            pe_mult(view, quartic, F)

    def test_mult_needs_bound_session(self):
        ctx = make_ctx(7, 1)
        a = CtPoly([ctx.encrypt_vec(0, np.array([2], dtype=np.uint64))])
        with pytest.raises(ValueError):
            pe_mult(ctx.adversary_view(), a, a)


class TestReq:
    def test_gated_on_capability(self):
        ctx, secret = _session()
        F = pe_encode(ctx, secret, [1, 2, 3, 4])
        with pytest.raises(MissingReqOracle):
            req(ctx.adversary_view(), F, secret)

    def test_requadratizes_and_blinds(self):
        ctx, secret = _session(width=4, has_req_oracle=True)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [1, 2, 3, 4])
        quartic = pe_mult(view, pe_mult(view, F, F), pe_mult(view, F, F))
        before_alpha = _raw_eval(quartic, secret.alpha)
        out = req(view, quartic, secret)
        assert out.degree == 2
        # Y = 0 preserved exactly
        assert np.array_equal(_raw_eval(out, 0), _raw_eval(quartic, 0))
        # alpha-track blinded: raw value moved, but ledger accounts for it
        after_alpha = _raw_eval(out, secret.alpha)
        t = secret.modulus.t
        shift = (after_alpha.astype(np.int64) - before_alpha.astype(np.int64)) % t
        ledger_delta = (out._dev.astype(np.int64) - quartic._dev.astype(np.int64)) % t
        assert shift.tolist() == ledger_delta.tolist()

    def test_counts_calls(self):
        ctx, secret = _session(has_req_oracle=True)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, [0, 0, 0, 0])
        oracle = make_req_oracle(view, secret)
        oracle(F)
        oracle(pe_mult(view, F, F))
        assert secret.req_calls == 2
        assert ctx.counters["req"] == 2


class TestVerify:
    def test_honest_eval_accepts(self, rng):
        t = 65537
        ctx, secret = _session(t=t, width=4, has_req_oracle=True)
        view = ctx.adversary_view()
        m = rng.integers(0, t, 4, dtype=np.uint64)
        F = pe_encode(ctx, secret, m)
        coeffs = [3, 1, 4]
        out = pe_eval_poly(view, F, coeffs)
        fv = np.array(
            [poly_eval_plain(coeffs, int(v), t) for v in secret.check_vector],
            dtype=np.uint64,
        )
        verdict = pe_verify(out, secret, fv)
        assert verdict.accepted
        want = [poly_eval_plain(coeffs, int(x), t) for x in m]
        assert verdict.value.tolist() == want
        assert ctx.counters["verify"] == 1

    def test_requadratized_chain_still_accepts(self, rng):
        # degree-4 intermediate -> oracle -> keep going; dev ledger must keep
        # the verifier's de-blinded view consistent
        t = 65537
        ctx, secret = _session(t=t, width=2, has_req_oracle=True)
        view = ctx.adversary_view()
        m = rng.integers(0, t, 2, dtype=np.uint64)
        F = pe_encode(ctx, secret, m)
        oracle = make_req_oracle(view, secret)
        quartic = pe_mult(view, pe_mult(view, F, F), pe_mult(view, F, F))  # x^4
        requad = oracle(quartic)
        out = pe_mult(view, requad, F)  # x^5
        fv = np.array([pow(int(v), 5, t) for v in secret.check_vector], dtype=np.uint64)
        verdict = pe_verify(out, secret, fv)
        assert verdict.accepted
        assert verdict.value.tolist() == [pow(int(x), 5, t) for x in m]

    def test_tamper_rejected(self, rng):
        t = 65537
        ctx, secret = _session(t=t, width=4)
        view = ctx.adversary_view()
        F = pe_encode(ctx, secret, rng.integers(0, t, 4, dtype=np.uint64))
        out = pe_eval_poly(view, F, [3, 1, 4])
        tampered = pe_add(view, out, pe_encode(ctx, secret, [1, 0, 0, 0]))
        fv = np.array(
            [poly_eval_plain([3, 1, 4], int(v), t) for v in secret.check_vector],
            dtype=np.uint64,
        )
        assert pe_verify(out, secret, fv).accepted
        assert not pe_verify(tampered, secret, fv).accepted

    def test_wrong_expected_value_rejected(self):
        ctx, secret = _session(width=1)
        F = pe_encode(ctx, secret, [7])
        fv = (secret.check_vector + 1) % 65537
        assert not pe_verify(F, secret, fv).accepted
