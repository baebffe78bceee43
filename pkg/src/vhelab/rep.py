"""Replication encoding and its per-slot-key patch.

The client hides random check values v_i in a secret half S of each n-slot
block and replicates the message m in the complement; after the server
evaluates a univariate polynomial slot-wise, the client verifies that the
check slots carry the precomputed f(v_i) and that all computation slots agree,
accepting the common value. The per-slot-key variant encrypts each of the n
block positions as a width-1 ciphertext under its own key, so cross-slot
homomorphic comparisons die with KeyMismatch.

`RepCiphertext` is either a single packed `VecCt` (block tiled slot_count/n
times) or a list of n width-1 `VecCt`s. Verification reads the first block
only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation
from .hesim import Context, VecCt
from .modring import Modulus
from .outcomes import Verdict


def poly_eval_plain(coeffs, x: int, t: int) -> int:
    """Horner evaluation of a coefficient list (ascending degree) at x mod t."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = (acc * x + c) % t
    return acc


@dataclass(frozen=True)
class RepParams:
    slot_count: int
    block: int
    modulus: Modulus

    def __post_init__(self):
        n, N = self.block, self.slot_count
        if n < 2 or n & (n - 1):
            raise ValueError(f"block size must be a power of two >= 2, got {n}")
        if N < n or N % n:
            raise ValueError(f"slot count {N} must be a multiple of the block {n}")
        if self.modulus.t <= n:
            raise ValueError("plaintext modulus too small for distinct check values")

    @property
    def secret_size(self) -> int:
        return self.block // 2


@dataclass
class RepClientState:
    """Client-side secret: which block slots hold which check values."""

    secret_slots: frozenset[int]  # indices within the block, |S| = n/2
    message: int
    check_values: dict[int, int]  # slot index in S -> v_i
    expected: dict[int, int] | None = field(default=None)

    def precompute(self, f_coeffs, t: int) -> None:
        """Populate the expected f(v_i) table; must run before verification."""
        self.expected = {
            i: poly_eval_plain(f_coeffs, v, t) for i, v in self.check_values.items()
        }


def _sample_block(params: RepParams, message: int, rng: np.random.Generator):
    n, t = params.block, params.modulus.t
    secret = rng.choice(n, size=params.secret_size, replace=False)
    # check values: uniform over Z_t \ {m}, pairwise distinct
    draw = rng.choice(t - 1, size=params.secret_size, replace=False)
    values = np.where(draw >= message % t, draw + 1, draw)
    block = np.full(n, message % t, dtype=np.uint64)
    check = {}
    for idx, val in zip(secret.tolist(), values.tolist()):
        block[idx] = val
        check[idx] = int(val)
    state = RepClientState(frozenset(int(i) for i in secret), message % t, check)
    return block, state


def rep_encode(ctx: Context, params: RepParams, message: int,
               rng: np.random.Generator) -> tuple[VecCt, RepClientState]:
    """Packed variant: one ciphertext, block tiled slot_count/n times."""
    if ctx.slot_count != params.slot_count or ctx.modulus.t != params.modulus.t:
        raise ValueError("context does not match the encoding parameters")
    block, state = _sample_block(params, message, rng)
    tiled = np.tile(block, params.slot_count // params.block)
    return ctx.encrypt_vec(0, tiled), state


def repmsk_encode(ctx: Context, params: RepParams, message: int,
                  rng: np.random.Generator) -> tuple[list[VecCt], RepClientState]:
    """Per-slot-key variant: n width-1 ciphertexts, entry i under key i."""
    if ctx.slot_count != 1:
        raise ValueError("per-slot-key encoding uses width-1 ciphertexts")
    if ctx.num_keys < params.block:
        raise ValueError(f"context needs {params.block} keys, has {ctx.num_keys}")
    block, state = _sample_block(params, message, rng)
    entries = [ctx.encrypt_vec(i, block[i : i + 1]) for i in range(params.block)]
    return entries, state


def poly_eval_ct(view, ct: VecCt, coeffs, t: int) -> VecCt:
    """Slot-wise Horner evaluation of a plaintext-coefficient polynomial on a
    ciphertext; deg-1 fewer ciphertext multiplications than the degree."""
    cs = [int(c) % t for c in coeffs]
    if len(cs) == 1:
        return view.cadd(view.cmult(ct, 0), cs[0])
    acc = view.cadd(view.cmult(ct, cs[-1]), cs[-2])
    for c in reversed(cs[:-2]):
        acc = view.cadd(view.mult(acc, ct), c)
    return acc


def honest_eval(view, f_coeffs, ct):
    """Honest server: evaluate the polynomial slot-wise on either variant."""
    t = view.modulus.t
    if isinstance(ct, list):
        return [poly_eval_ct(view, entry, f_coeffs, t) for entry in ct]
    return poly_eval_ct(view, ct, f_coeffs, t)


def decrypt_response(ctx: Context, ct) -> np.ndarray:
    """Client-side: decrypt a response into one block of n slot values."""
    if isinstance(ct, list):
        return np.array([int(ctx.decrypt(entry)[0]) for entry in ct], dtype=np.uint64)
    return ctx.decrypt(ct)


def rep_verify(z: np.ndarray, state: RepClientState, params: RepParams) -> Verdict:
    """Check the first block: precomputed matches on S, agreement on the rest."""
    if state.expected is None:
        raise InvariantViolation("precompute(f) must run before verification")
    block = np.asarray(z)[: params.block]
    for i in state.secret_slots:
        if int(block[i]) != state.expected[i]:
            return Verdict.reject()
    common = {int(block[j]) for j in range(params.block) if j not in state.secret_slots}
    if len(common) != 1:
        return Verdict.reject()
    return Verdict.accept(common.pop())
