"""Monte Carlo driver: one pure trial function per scheme, a serial/parallel
runner, and a vectorized bit-level engine for the verifiable-PRF scheme.

Every trial is a function of (config, seed) alone, so counts are identical
for any work partition, and the fast verifiable-PRF engine reproduces the
full engine's classification seed-for-seed because both read the same
counter-mode word stream.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .. import hesim, pe, rep, vaddg
from ..attacks import (
    extended_attack,
    extended_attack_pr,
    forge_rep,
    pe_attack,
    pow2_strides,
    recover_sc,
    recover_sc_pr,
    vaddg_attack,
)
from ..errors import ConfigError
from ..modring import Modulus, factor_prime_power
from ..outcomes import TrialClass, classify
from ..rep import RepParams, poly_eval_plain
from . import seeds as seedlib
from .config import ExperimentConfig, config_from_dict, normalize_config
from .report import build_report
from .theory import theory_for


def _poly_pair(rng: np.random.Generator, t: int):
    """Random degree-<=2 target f and the off-by-one substitute g."""
    f = [int(c) for c in rng.integers(0, t, size=3)]
    g = [(f[0] + 1) % t, f[1], f[2]]
    return f, g


def _poly_eval_vec(coeffs, x: np.ndarray, t: int) -> np.ndarray:
    """Slot-wise Horner on a vector of points (moduli here stay < 2^32)."""
    x = np.asarray(x, dtype=np.uint64)
    acc = np.zeros_like(x)
    for c in reversed([int(c) % t for c in coeffs]):
        acc = (acc * x + np.uint64(c)) % np.uint64(t)
    return acc


def _encode_parity_split(ctx, params: RepParams, message: int,
                         rng: np.random.Generator):
    """Replication encoding with an even message and odd check values.

    The p = 2 keep-modulus probe is exact only when message/check differences
    are odd, so this variant splits the two populations by parity instead of
    sampling check values over all of Z_t \\ {m}.
    """
    n, t = params.block, params.modulus.t
    half = params.secret_size
    secret = rng.choice(n, size=half, replace=False)
    odd = 2 * rng.choice(t // 2, size=half, replace=False) + 1
    block = np.full(n, message % t, dtype=np.uint64)
    check = {}
    for idx, val in zip(secret.tolist(), odd.tolist()):
        block[idx] = val
        check[idx] = int(val)
    state = rep.RepClientState(frozenset(int(i) for i in secret), message % t, check)
    tiled = np.tile(block, params.slot_count // n)
    return ctx.encrypt_vec(0, tiled), state


def _rep_trial(config: ExperimentConfig, seed: int) -> TrialClass:
    """Packed replication: probe-and-recover the common-slot indicator, then
    blend a substitute evaluation through it."""
    mod = factor_prime_power(config.t)
    params = RepParams(config.N, config.n, mod)
    caps = hesim.Capabilities(has_rlk=True, rtk_indices=pow2_strides(config.n))
    ctx = hesim.Context(mod, config.N, caps)
    rng = np.random.default_rng(seed)
    t = mod.t
    even_route = mod.p == 2 and mod.r > 1
    if even_route:
        message = 2 * int(rng.integers(0, t // 2))
        ct, state = _encode_parity_split(ctx, params, message, rng)
    else:
        message = int(rng.integers(0, t))
        ct, state = rep.rep_encode(ctx, params, message, rng)
    f_coeffs, g_coeffs = _poly_pair(rng, t)
    view = ctx.adversary_view()
    if mod.r > 1:
        recovered = recover_sc_pr(view, ct, config.k, config.n)
    else:
        recovered = recover_sc(view, ct, config.k, config.n)
    if even_route:
        # no unit-collapse exists at p = 2: deliver f + (recovered offset)
        response = view.add(rep.honest_eval(view, f_coeffs, ct), recovered)
    else:
        response = forge_rep(view, ct, f_coeffs, g_coeffs, recovered)
    state.precompute(f_coeffs, t)
    z = rep.decrypt_response(ctx, response)
    verdict = rep.rep_verify(z, state, params)
    return classify(verdict, poly_eval_plain(f_coeffs, message, t))


def _repmsk_trial(config: ExperimentConfig, seed: int) -> TrialClass:
    """Per-slot-key replication: slot-wise membership mask, no rotations."""
    mod = factor_prime_power(config.t)
    params = RepParams(config.N, config.n, mod)
    caps = hesim.Capabilities(has_rlk=True)
    ctx = hesim.Context(mod, 1, caps, num_keys=config.n)
    rng = np.random.default_rng(seed)
    t = mod.t
    message = int(rng.integers(0, t))
    cts, state = rep.repmsk_encode(ctx, params, message, rng)
    shift = int(rng.integers(0, t)) if config.a_policy == "uniform" else 0
    f_coeffs, g_coeffs = _poly_pair(rng, t)
    view = ctx.adversary_view()
    mask_fn = extended_attack_pr if mod.r > 1 else extended_attack
    w = mask_fn(view, cts, config.d, shift, block=config.n)
    response = forge_rep(view, cts, f_coeffs, g_coeffs, w)
    state.precompute(f_coeffs, t)
    z = rep.decrypt_response(ctx, response)
    verdict = rep.rep_verify(z, state, params)
    return classify(verdict, poly_eval_plain(f_coeffs, message, t))


def _pe_trial(config: ExperimentConfig, seed: int) -> TrialClass:
    """Checksum-polynomial session: splice a substitute constant track under a
    requadratized selector that the verifier cannot see."""
    mod = factor_prime_power(config.t)
    t = mod.t
    caps = hesim.Capabilities(has_rlk=True, has_req_oracle=True)
    ctx = hesim.Context(mod, config.N, caps)
    rng = np.random.default_rng(seed)
    alpha = int(rng.integers(1, t))
    while alpha % mod.p == 0:
        alpha = int(rng.integers(1, t))
    check_vec = rng.integers(0, t, size=config.N, dtype=np.uint64)
    secret = pe.PeSecret(alpha, check_vec, mod, rng)
    message = rng.integers(0, t, size=config.N, dtype=np.uint64)
    encoded = pe.pe_encode(ctx, secret, message)
    f_coeffs, g_coeffs = _poly_pair(rng, t)
    view = ctx.adversary_view()
    honest_poly = pe.pe_eval_poly(view, encoded, f_coeffs)
    oracle = pe.make_req_oracle(view, secret)
    forged = pe_attack(view, honest_poly, [encoded], g_coeffs, oracle)
    verdict = pe.pe_verify(forged, secret, _poly_eval_vec(f_coeffs, check_vec, t))
    honest = _poly_eval_vec(f_coeffs, message, t)
    equal = verdict.accepted and np.array_equal(np.asarray(verdict.value), honest)
    return classify(verdict, honest, delivered_equal=equal)


def _trit_vector(seed_attack: int) -> np.ndarray:
    """Words 1.. of the attack stream as trits; skip all-zero blocks."""
    start = 1
    while True:
        trits = (seedlib.derive_many(seed_attack, vaddg.N_OUT, start=start)
                 % np.uint64(3)).astype(np.uint8)
        if trits.any():
            return trits
        start += vaddg.N_OUT


def _vaddg_full_trial(config: ExperimentConfig, seed: int) -> TrialClass:
    """Verifiable-PRF query with the bit-shift forgery applied to every row.

    All randomness comes from tagged sub-streams of the trial seed (table
    bits, message bits, spot-check picks, forged bit index + trit vector, PRF
    matrices, shuffle), so the vectorized engine can replay the exact trial.
    """
    params = vaddg.VaddgParams(config.alpha, config.beta, config.nu, config.kappa)
    s_pairs = seedlib.derive(seed, seedlib.TAG_PAIRS)
    s_msgs = seedlib.derive(seed, seedlib.TAG_MSGS)
    s_picks = seedlib.derive(seed, seedlib.TAG_PICKS)
    s_att = seedlib.derive(seed, seedlib.TAG_ATTACK)
    s_prf = seedlib.derive(seed, seedlib.TAG_PRF)
    s_rho = seedlib.derive(seed, seedlib.TAG_RHO)

    key = vaddg.PrfKeyModel(s_prf)
    table_bits = seedlib.words_to_bits(
        seedlib.derive_many(s_pairs, 2 * params.kappa).reshape(params.kappa, 2),
        vaddg.N_IN)
    published = vaddg.publish_pairs(key, params.kappa, inputs=table_bits)
    messages = seedlib.words_to_bits(
        seedlib.derive_many(s_msgs, 2 * params.alpha).reshape(params.alpha, 2),
        vaddg.N_IN)
    picks = (seedlib.derive_many(s_picks, params.beta)
             % np.uint64(params.kappa)).astype(np.int64)
    u = config.u if config.u is not None else seedlib.derive(s_att, 0) % vaddg.N_IN
    t_vec = _trit_vector(s_att)

    caps = hesim.Capabilities(has_btk=True, bootstrap_depth_budget=1)
    ctx = hesim.Context(Modulus(2), 1, caps)
    query = vaddg.build_query(ctx, params, messages, published,
                              np.random.default_rng(s_rho), picks=picks)
    view = ctx.adversary_view()
    response = vaddg_attack(view, key, query.cts, u, t_vec)
    verdict = vaddg.client_verify(ctx, query, response, published)
    honest = key.eval_many(messages)
    equal = verdict.accepted and np.array_equal(np.asarray(verdict.value), honest)
    return classify(verdict, honest, delivered_equal=equal)


def _vaddg_fast_counts(config: ExperimentConfig) -> Counter:
    """Bit-level replay of the full trial, vectorized over all trials.

    Classification depends only on the forged input bit of each query row:
    a spot-check row with bit 1 trips verification; otherwise the forgery
    lands iff any message carries bit 1.  The loop over messages retires
    trials as soon as a 1-bit shows up, so even very wide queries cost only
    ~log2(trials) passes.
    """
    trials = config.trials or 0
    if trials == 0:
        return Counter()
    seeds_arr = seedlib.trial_seeds_array(config.master_seed, trials)
    s_pairs = seedlib.derive_each(seeds_arr, seedlib.TAG_PAIRS)
    s_msgs = seedlib.derive_each(seeds_arr, seedlib.TAG_MSGS)
    s_picks = seedlib.derive_each(seeds_arr, seedlib.TAG_PICKS)
    s_att = seedlib.derive_each(seeds_arr, seedlib.TAG_ATTACK)
    if config.u is None:
        u = seedlib.derive_each(s_att, 0) % np.uint64(vaddg.N_IN)
    else:
        u = np.full(trials, config.u, dtype=np.uint64)
    word_off = u >> np.uint64(6)
    bit_pos = u & np.uint64(63)
    one = np.uint64(1)
    gamma = np.uint64(seedlib.GAMMA)

    detected = np.zeros(trials, dtype=bool)
    for j in range(config.beta):
        pick = seedlib.derive_each(s_picks, j) % np.uint64(config.kappa)
        widx = np.uint64(2) * pick + word_off
        with np.errstate(over="ignore"):
            words = seedlib._finalize_u64(s_pairs + (widx + one) * gamma)
        detected |= ((words >> bit_pos) & one).astype(bool)

    any_msg = np.zeros(trials, dtype=bool)
    pending = np.arange(trials)
    for k in range(config.alpha):
        if pending.size == 0:
            break
        widx = np.uint64(2 * k) + word_off[pending]
        with np.errstate(over="ignore"):
            words = seedlib._finalize_u64(s_msgs[pending] + (widx + one) * gamma)
        hit = ((words >> bit_pos[pending]) & one).astype(bool)
        any_msg[pending[hit]] = True
        pending = pending[~hit]

    return Counter({
        TrialClass.FORGERY_SUCCESS.value: int((~detected & any_msg).sum()),
        TrialClass.DETECTED.value: int(detected.sum()),
        TrialClass.BENIGN.value: int((~detected & ~any_msg).sum()),
    })


def vaddg_fast_trial(config: ExperimentConfig, seed: int) -> TrialClass:
    """Scalar bit-level replay of one full verifiable-PRF trial.

    Same decision rule as :func:`_vaddg_fast_counts`, applied to a single
    seed: a spot-check row whose forged bit is 1 trips verification, else the
    forgery lands iff any message row carries the bit.  Exists so the two
    engines can be cross-validated seed by seed.
    """
    config = normalize_config(config)
    s_pairs = seedlib.derive(seed, seedlib.TAG_PAIRS)
    s_msgs = seedlib.derive(seed, seedlib.TAG_MSGS)
    s_picks = seedlib.derive(seed, seedlib.TAG_PICKS)
    s_att = seedlib.derive(seed, seedlib.TAG_ATTACK)
    u = config.u if config.u is not None else seedlib.derive(s_att, 0) % vaddg.N_IN
    word_off, bit_pos = u >> 6, u & 63
    for j in range(config.beta):
        pick = seedlib.derive(s_picks, j) % config.kappa
        if (seedlib.derive(s_pairs, 2 * pick + word_off) >> bit_pos) & 1:
            return TrialClass.DETECTED
    for k in range(config.alpha):
        if (seedlib.derive(s_msgs, 2 * k + word_off) >> bit_pos) & 1:
            return TrialClass.FORGERY_SUCCESS
    return TrialClass.BENIGN


_TRIAL_FNS = {
    "rep": _rep_trial,
    "repmsk": _repmsk_trial,
    "pe": _pe_trial,
    "vaddg": _vaddg_full_trial,
}


def run_trial(config: ExperimentConfig, seed: int) -> TrialClass:
    """One classified trial of the configured scheme (full engine)."""
    config = normalize_config(config)
    if config.scheme not in _TRIAL_FNS:
        raise ConfigError(f"scheme {config.scheme!r} has no trial function")
    return _TRIAL_FNS[config.scheme](config, seed)


def _run_chunk(config: ExperimentConfig, seed_list) -> Counter:
    fn = _TRIAL_FNS[config.scheme]
    counter = Counter()
    for s in seed_list:
        counter[fn(config, int(s)).value] += 1
    return counter


def _run_trials(config: ExperimentConfig) -> Counter:
    if config.scheme == "vaddg" and config.fast_trial:
        return _vaddg_fast_counts(config)
    trials = config.trials or 0
    seeds_arr = seedlib.trial_seeds_array(config.master_seed, trials)
    if config.workers > 1 and trials > 1:
        parts = [p for p in np.array_split(seeds_arr, config.workers) if len(p)]
        merged = Counter()
        with ProcessPoolExecutor(max_workers=len(parts)) as pool:
            futures = [pool.submit(_run_chunk, config, [int(s) for s in part])
                       for part in parts]
            for future in futures:
                merged.update(future.result())
        return merged
    return _run_chunk(config, [int(s) for s in seeds_arr])


def run_experiment(config: ExperimentConfig | dict) -> dict:
    """Run the configured experiment and return the report envelope."""
    if isinstance(config, dict):
        config = config_from_dict(config)
    config = normalize_config(config)
    if config.scheme == "lemmas":
        raise ConfigError("the lemma checks run through lemma_suite, not trials")
    if config.fast_trial and config.scheme != "vaddg":
        raise ConfigError("fast_trial applies only to the vaddg scheme")
    p_theory = theory_for(config)
    start = time.perf_counter()
    counts = _run_trials(config)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return build_report(config, counts, p_theory, wall_ms)
