"""Deterministic seed derivation: one 64-bit mixing permutation everywhere.

Per-trial seeds, per-purpose sub-seeds, and counter-mode word streams are all
the same rule — finalize(seed + (index+1)·GAMMA mod 2^64) with the SplitMix64
finalizer — so a fast trial and a full-pipeline trial that share a seed
derive bit-identical randomness without sharing any code path.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB

SEED_RULE = (
    "seed_i = finalize((seed + (i+1)*0x9E3779B97F4A7C15) mod 2^64); "
    "finalize(z): z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27; "
    "z *= 0x94D049BB133111EB; z ^= z>>31 (all mod 2^64)"
)

# Domain tags for per-purpose sub-seeds within one trial.
TAG_PAIRS = 0   # published-table input bits
TAG_MSGS = 1    # message input bits
TAG_PICKS = 2   # spot-check indices
TAG_ATTACK = 3  # forged bit index and trit vector
TAG_PRF = 4     # PRF layer matrices
TAG_RHO = 5     # query shuffle


def finalize(z: int) -> int:
    """SplitMix64 output permutation of a 64-bit word."""
    z &= _MASK
    z ^= z >> 30
    z = (z * _MULT1) & _MASK
    z ^= z >> 27
    z = (z * _MULT2) & _MASK
    z ^= z >> 31
    return z


def derive(seed: int, index: int) -> int:
    """Word `index` of the stream rooted at `seed` (also: sub-seed for a tag)."""
    return finalize((seed + (index + 1) * GAMMA) & _MASK)


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Independent per-trial seed from the experiment's master seed."""
    return derive(master_seed, trial_index)


def _finalize_u64(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = z.astype(np.uint64, copy=True)
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MULT1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MULT2)
        z ^= z >> np.uint64(31)
    return z


def derive_each(seeds: np.ndarray, index: int) -> np.ndarray:
    """Vectorized: word `index` for every seed in a uint64 array."""
    step = np.uint64(((index + 1) * GAMMA) & _MASK)
    with np.errstate(over="ignore"):
        base = seeds.astype(np.uint64) + step
    return _finalize_u64(base)


def derive_many(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Vectorized: words start..start+count-1 of one seed's stream."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        base = np.uint64(seed & _MASK) + idx * np.uint64(GAMMA)
    return _finalize_u64(base)


def trial_seeds_array(master_seed: int, trials: int) -> np.ndarray:
    """All per-trial seeds of an experiment as a uint64 vector."""
    return derive_many(master_seed, trials)


def words_to_bits(words: np.ndarray, bit_count: int) -> np.ndarray:
    """Little-endian bit expansion: bit i comes from words[..., i//64] >> (i%64).

    Accepts (..., ceil(bit_count/64)) uint64 and returns (..., bit_count) uint8.
    """
    words = np.asarray(words, dtype=np.uint64)
    need = (bit_count + 63) // 64
    if words.shape[-1] != need:
        raise ValueError(f"need {need} words for {bit_count} bits")
    shifts = np.arange(64, dtype=np.uint64)
    expanded = (words[..., :, None] >> shifts) & np.uint64(1)
    flat = expanded.reshape(*words.shape[:-1], need * 64)
    return flat[..., :bit_count].astype(np.uint8)
