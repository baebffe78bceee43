"""Polynomial encoding: ciphertext polynomials in a formal variable Y.

The client encodes (m, v) as the degree-1 polynomial F(Y) with F(0) = m and
F(alpha) = v for a secret unit alpha; the server operates coefficient-wise on
ciphertexts; the client accepts Dec(F(0)) iff the delivered polynomial still
evaluates to the expected value at alpha.

Degree discipline: operations keep degree <= 4; the client-aided
requadratization oracle (`req`) maps any polynomial of degree <= 4 to a
quadratic one, preserving the value at Y = 0 exactly and blinding the value at
Y = alpha with a fresh uniform vector per call, incrementing a call counter.

Blinding bookkeeping: every CtPoly carries a hidden trusted-side deviation
ledger `_dev` — the net blinding offset of its Y = alpha value relative to the
blinding-free counterfactual. The ledger is propagated mechanically through
every operation (for products via the raw alpha-track payloads), modelling a
client that tracks how the vectors it injected flow through the delivered
circuit; verification de-blinds with the delivered ledger before comparing
against f(v). Adversary code can never read `_dev` (facade-audited).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegreeOverflow, MissingReqOracle
from .hesim import AdversaryView, Context
from .modring import Modulus
from .outcomes import Verdict

DEGREE_CAP = 4


@dataclass
class PeSecret:
    """Client secret: the evaluation point alpha, the check vector v, and the
    requadratization call counter."""

    alpha: int
    check_vector: np.ndarray
    modulus: Modulus
    rng: np.random.Generator
    req_calls: int = 0

    def __post_init__(self):
        if self.alpha % self.modulus.p == 0:
            raise ValueError("alpha must be a unit of Z_t")
        self.alpha %= self.modulus.t
        self.check_vector = kernels.as_slots(self.check_vector, self.modulus.t)


class CtPoly:
    """Ciphertext polynomial: a tuple of coefficient ciphertexts (ascending
    degree) plus the hidden deviation ledger of its alpha-track."""

    __slots__ = ("coeffs", "_dev")

    def __init__(self, coeffs, dev=None):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a ciphertext polynomial needs at least one coefficient")
        if len(coeffs) - 1 > DEGREE_CAP:
            raise DegreeOverflow(f"degree {len(coeffs) - 1} exceeds the cap {DEGREE_CAP}")
        keys = {c.key_id for c in coeffs}
        mods = {c.modulus.t for c in coeffs}
        if len(keys) != 1 or len(mods) != 1:
            raise ValueError("coefficients must share one key and one modulus")
        self.coeffs = coeffs
        width = coeffs[0].width
        self._dev = (
            np.zeros(width, dtype=np.uint64)
            if dev is None
            else kernels.as_slots(dev, coeffs[0].modulus.t, width)
        )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"CtPoly(degree={self.degree}, width={self.coeffs[0].width})"


def _ctx_of(F: CtPoly) -> Context:
    return F.coeffs[0]._ctx


def _raw_eval(F: CtPoly, point: int) -> np.ndarray:
    """Trusted: decrypt-and-evaluate the coefficient payloads at a point."""
    ctx = _ctx_of(F)
    t = ctx.modulus.t
    acc = np.zeros(F.coeffs[0].width, dtype=np.uint64)
    for coeff in reversed(F.coeffs):
        acc = kernels.add_vv(kernels.mul_vs(acc, point, t), coeff._slots, t)
    return acc


def pe_encode(ctx: Context, secret: PeSecret, message) -> CtPoly:
    """Degree-1 interpolation: coefficients m and (v - m) * alpha^{-1}."""
    t = secret.modulus.t
    bind_session(ctx, secret)
    m = kernels.as_slots(message, t, ctx.slot_count)
    v = kernels.as_slots(secret.check_vector, t, ctx.slot_count)
    inv_alpha = pow(secret.alpha, -1, t)
    slope = kernels.mul_vs(kernels.sub_vv(v, m, t), inv_alpha, t)
    return CtPoly([ctx.encrypt_vec(0, m), ctx.encrypt_vec(0, slope)])


def pe_add(view: AdversaryView, F: CtPoly, G: CtPoly) -> CtPoly:
    t = view.modulus.t
    out = []
    for d in range(max(len(F.coeffs), len(G.coeffs))):
        a = F.coeffs[d] if d < len(F.coeffs) else None
        b = G.coeffs[d] if d < len(G.coeffs) else None
        if a is not None and b is not None:
            out.append(view.add(a, b))
        else:
            out.append(a if a is not None else b)
    dev = kernels.add_vv(F._dev, G._dev, t)
    return CtPoly(out, dev)


def pe_sub(view: AdversaryView, F: CtPoly, G: CtPoly) -> CtPoly:
    neg = pe_cmult(view, G, -1)
    return pe_add(view, F, neg)


def pe_cmult(view: AdversaryView, F: CtPoly, c) -> CtPoly:
    t = view.modulus.t
    out = [view.cmult(coeff, c) for coeff in F.coeffs]
    cc = np.asarray(c)
    if cc.ndim == 0:
        dev = kernels.mul_vs(F._dev, int(cc), t)
    else:
        dev = kernels.mul_vv(F._dev, kernels.as_slots(cc, t, F.coeffs[0].width), t)
    return CtPoly(out, dev)


def pe_mult(view: AdversaryView, F: CtPoly, G: CtPoly) -> CtPoly:
    """Convolution of coefficient ciphertexts; degree adds, cap enforced."""
    deg = F.degree + G.degree
    if deg > DEGREE_CAP:
        raise DegreeOverflow(
            f"product degree {deg} exceeds the cap {DEGREE_CAP}; requadratize first"
        )
    out = [None] * (deg + 1)
    for i, a in enumerate(F.coeffs):
        for j, b in enumerate(G.coeffs):
            term = view.mult(a, b)
            out[i + j] = term if out[i + j] is None else view.add(out[i + j], term)
    # deviation of a product: with raw alpha-values fa, ga and ledgers dF, dG,
    # true = (fa - dF)(ga - dG), so dev = fa*dG + ga*dF - dF*dG
    ctx = _ctx_of(F)
    secret_t = ctx.modulus.t
    alpha_point = getattr(ctx, "_pe_alpha", None)
    if alpha_point is None:
        raise ValueError("context is not bound to a polynomial-encoding session")
    fa = _raw_eval(F, alpha_point)
    ga = _raw_eval(G, alpha_point)
    dev = kernels.sub_vv(
        kernels.add_vv(
            kernels.mul_vv(fa, G._dev, secret_t),
            kernels.mul_vv(ga, F._dev, secret_t),
            secret_t,
        ),
        kernels.mul_vv(F._dev, G._dev, secret_t),
        secret_t,
    )
    return CtPoly(out, dev)


def bind_session(ctx: Context, secret: PeSecret) -> None:
    """Attach the secret evaluation point to the context's trusted side, so
    the deviation ledger can be propagated through products."""
    ctx._pe_alpha = secret.alpha


def req(view: AdversaryView, F: CtPoly, secret: PeSecret) -> CtPoly:
    """Client-aided requadratization: degree <= 4 in, quadratic out.

    Preserves Y = 0 exactly, resamples the other two coefficients so the
    Y = alpha value is the input's plus a fresh uniform blinding vector, and
    increments the session counter. Gated on the req-oracle capability.
    """
    if not view.capabilities.has_req_oracle:
        raise MissingReqOracle("the requadratization oracle is not granted in this scenario")
    if F.degree > DEGREE_CAP:
        raise DegreeOverflow(f"requadratization input degree {F.degree} exceeds {DEGREE_CAP}")
    ctx = _ctx_of(F)
    t = secret.modulus.t
    width = F.coeffs[0].width
    alpha = secret.alpha

    val0 = _raw_eval(F, 0)
    val_alpha = _raw_eval(F, alpha)
    r = secret.rng.integers(0, t, size=width, dtype=np.uint64)
    blinded = kernels.add_vv(val_alpha, r, t)

    c2 = secret.rng.integers(0, t, size=width, dtype=np.uint64)
    # solve c1 so that c0 + c1*alpha + c2*alpha^2 == blinded with c0 = val0
    inv_alpha = pow(alpha, -1, t)
    rem = kernels.sub_vv(
        kernels.sub_vv(blinded, val0, t),
        kernels.mul_vs(c2, pow(alpha, 2, t), t),
        t,
    )
    c1 = kernels.mul_vs(rem, inv_alpha, t)

    secret.req_calls += 1
    ctx.counters["req"] += 1
    out = CtPoly(
        [ctx.encrypt_vec(0, val0), ctx.encrypt_vec(0, c1), ctx.encrypt_vec(0, c2)],
        kernels.add_vv(F._dev, r, t),
    )
    return out


def make_req_oracle(view: AdversaryView, secret: PeSecret):
    """Bind the oracle to a session; hands attack code a callable that cannot
    see the secret."""

    def oracle(F: CtPoly) -> CtPoly:
        return req(view, F, secret)

    return oracle


def pe_verify(F: CtPoly, secret: PeSecret, fv) -> Verdict:
    """Accept Dec(F(0)) iff the de-blinded alpha-track equals the expected f(v)."""
    ctx = _ctx_of(F)
    t = secret.modulus.t
    raw = _raw_eval(F, secret.alpha)
    true_val = kernels.sub_vv(raw, F._dev, t)
    expected = kernels.as_slots(fv, t, F.coeffs[0].width)
    ctx.counters["verify"] += 1
    if np.array_equal(true_val, expected):
        return Verdict.accept(_raw_eval(F, 0))
    return Verdict.reject()


def pe_eval_poly(view: AdversaryView, F: CtPoly, coeffs) -> CtPoly:
    """Honest evaluation of a plaintext-coefficient polynomial at the encoded
    input, via a power basis. Degree of the result is deg(f) * deg(F); inputs
    that would exceed the cap must be requadratized by the caller."""
    t = view.modulus.t
    cs = [int(c) % t for c in coeffs]
    acc = pe_cmult(view, CtPoly([view.embed_plain(np.ones(F.coeffs[0].width, dtype=np.uint64))]), cs[0])
    power = None
    for c in cs[1:]:
        power = F if power is None else pe_mult(view, power, F)
        if c:
            acc = pe_add(view, acc, pe_cmult(view, power, c))
    return acc
