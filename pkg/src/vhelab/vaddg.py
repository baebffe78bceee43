"""Verifiable OPRF protocol model: a bit-sliced PRF evaluated under TFHE-style
bit ciphertexts, with copy/pick redundancy checks on the client.

The PRF pipeline is linear -> bootstrap -> linear:

    [x]_2 (128 bits, base key)
      --L1 (0/1 matrix, 256x128, mod 2)-->  [y]_2 (256 bits)
      --per-bit mod-2 -> mod-3 bootstrap--> [y]_3 (256 trits, boot key)
      --L2 (0/1/2 matrix, 82x256, mod 3)--> [z]_3 (82 trits)

Each output trit consumes exactly one bootstrapping depth and the server never
holds a key-switching key, so a bootstrapped trit cannot re-enter the pipeline.

A query packs nu copies of each of alpha distinct message inputs plus beta
spot-check inputs drawn (with replacement) from a published table of
input/output pairs, shuffled by a secret permutation.  The client accepts iff
every copy-group agrees, the alpha group values are pairwise distinct, and
every spot check reproduces its published output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DuplicateInputs
from .hesim import KEY_TAG_BASE, BitCt, Context
from .outcomes import Verdict

N_IN = 128
N_MID = 256
N_OUT = 82


@dataclass(frozen=True)
class VaddgParams:
    alpha: int  # distinct message inputs per query
    beta: int   # spot checks against the published table
    nu: int     # copies of each message input
    kappa: int = 4096  # published table size

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("need at least one message input")
        if self.beta < 0 or self.nu < 1 or self.kappa < 1:
            raise ValueError("beta must be >= 0, nu and kappa >= 1")

    @property
    def gamma(self) -> int:
        """Total elements per query."""
        return self.alpha * self.nu + self.beta


class PrfKeyModel:
    """Plaintext model of the PRF: two seed-derived linear layers.

    The matrices stand in for the public circuit description; the secrecy in
    the protocol lives entirely in the encryption keys of the simulator.
    """

    def __init__(self, seed: int):
        rng = np.random.default_rng(seed)
        self.l1 = rng.integers(0, 2, size=(N_MID, N_IN), dtype=np.uint8)
        self.l2 = rng.integers(0, 3, size=(N_OUT, N_MID), dtype=np.uint8)
        self._l1_support = [np.nonzero(row)[0] for row in self.l1]
        self._l2_support = [np.nonzero(row)[0] for row in self.l2]

    def eval_bits(self, bits) -> np.ndarray:
        """Reference evaluation on one 128-bit input; returns 82 trits."""
        x = np.asarray(bits, dtype=np.uint8)
        if x.shape != (N_IN,):
            raise ValueError(f"input must have {N_IN} bits")
        mid = (self.l1 @ x) % 2
        return ((self.l2 @ mid) % 3).astype(np.uint8)

    def eval_many(self, rows) -> np.ndarray:
        """Batched reference evaluation; rows is (count, 128)."""
        x = np.asarray(rows, dtype=np.uint8)
        if x.ndim != 2 or x.shape[1] != N_IN:
            raise ValueError(f"rows must be (count, {N_IN})")
        mid = (x @ self.l1.T) % 2
        return ((mid @ self.l2.T) % 3).astype(np.uint8)


@dataclass(frozen=True)
class PublishedPairs:
    """Input/output table the key holder publishes for spot checks."""

    inputs: np.ndarray   # (kappa, 128) bits
    outputs: np.ndarray  # (kappa, 82) trits


def publish_pairs(key: PrfKeyModel, kappa: int,
                  rng: np.random.Generator | None = None,
                  inputs=None) -> PublishedPairs:
    if inputs is None:
        if rng is None:
            raise ValueError("need either explicit inputs or an rng")
        inputs = rng.integers(0, 2, size=(kappa, N_IN), dtype=np.uint8)
    else:
        inputs = np.asarray(inputs, dtype=np.uint8)
        if inputs.shape != (kappa, N_IN):
            raise ValueError(f"inputs must be ({kappa}, {N_IN})")
    return PublishedPairs(inputs=inputs, outputs=key.eval_many(inputs))


@dataclass(frozen=True)
class VaddgQuery:
    """One shuffled query.  sent[i] = logical[rho[i]]; logical order is
    nu copies of message 0, ..., nu copies of message alpha-1, then the
    beta spot checks."""

    params: VaddgParams
    rho: np.ndarray     # permutation of range(gamma)
    picks: np.ndarray   # (beta,) indices into the published table
    cts: list           # gamma rows of 128 BitCt each, in sent order


def build_query(ctx: Context, params: VaddgParams, inputs,
                published: PublishedPairs, rng: np.random.Generator,
                picks=None) -> VaddgQuery:
    """Encrypt and shuffle a query around alpha distinct message inputs."""
    inputs = np.asarray(inputs, dtype=np.uint8)
    if inputs.shape != (params.alpha, N_IN):
        raise ValueError(f"inputs must be ({params.alpha}, {N_IN})")
    if len({row.tobytes() for row in inputs}) != params.alpha:
        raise DuplicateInputs("message inputs must be pairwise distinct")
    if picks is None:
        picks = rng.integers(0, params.kappa, size=params.beta)
    picks = np.asarray(picks, dtype=np.int64)
    if picks.shape != (params.beta,) or (params.beta and
                                         int(picks.max()) >= params.kappa):
        raise ValueError("picks must be beta indices below kappa")

    logical = np.concatenate(
        [np.repeat(inputs, params.nu, axis=0),
         published.inputs[picks].reshape(params.beta, N_IN)], axis=0)
    rho = rng.permutation(params.gamma)
    cts = [[ctx.encrypt_bit(int(b), modulus=2, key_tag=KEY_TAG_BASE)
            for b in logical[j]] for j in rho]
    return VaddgQuery(params=params, rho=rho, picks=picks, cts=cts)


def eval_prf_ct(view, key: PrfKeyModel, ct_row: list[BitCt]) -> list[BitCt]:
    """Honest homomorphic PRF evaluation on one encrypted input row."""
    if len(ct_row) != N_IN:
        raise ValueError(f"expected {N_IN} input bits")
    mid = []
    for j in range(N_MID):
        sup = key._l1_support[j]
        lin = view.tfhe_linear([1] * len(sup), [ct_row[i] for i in sup])
        mid.append(view.cppbs23(lin))
    out = []
    for j in range(N_OUT):
        sup = key._l2_support[j]
        out.append(view.tfhe_linear([int(key.l2[j, i]) for i in sup],
                                    [mid[i] for i in sup]))
    return out


def eval_prf(view, key: PrfKeyModel, query: VaddgQuery) -> list[list[BitCt]]:
    """Honest server response, in sent order."""
    return [eval_prf_ct(view, key, row) for row in query.cts]


def client_verify(ctx: Context, query: VaddgQuery, response: list[list[BitCt]],
                  published: PublishedPairs) -> Verdict:
    """Decrypt, un-shuffle, and run the copy / distinctness / spot checks.

    Accepts with the (alpha, 82) matrix of per-message outputs.
    """
    params = query.params
    if len(response) != params.gamma:
        raise ValueError(f"response must have {params.gamma} rows")
    sent = np.array([[ctx.decrypt_bit(b) for b in row] for row in response],
                    dtype=np.uint8)
    logical = np.empty_like(sent)
    logical[query.rho] = sent  # sent[i] = logical[rho[i]]

    groups = logical[: params.alpha * params.nu].reshape(
        params.alpha, params.nu, N_OUT)
    if not (groups == groups[:, :1, :]).all():
        return Verdict.reject()
    common = groups[:, 0, :]
    if len({row.tobytes() for row in common}) != params.alpha:
        return Verdict.reject()
    checks = logical[params.alpha * params.nu :]
    if not (checks == published.outputs[query.picks]).all():
        return Verdict.reject()
    return Verdict.accept(common)
