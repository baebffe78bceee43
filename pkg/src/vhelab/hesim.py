"""Capability-constrained homomorphic-evaluation simulator.

Plaintexts are tracked exactly (the delta = 0 correctness model: evaluation
failure probability is negligible in the real schemes and orthogonal to the
attacks). Adversary code receives an :class:`AdversaryView`, which exposes ring
and bit operations over opaque handles and enforces exactly the key material
each scenario grants the server:

* ``rlk`` gates ciphertext-ciphertext multiplication,
* per-index rotation keys gate each cyclic shift (index i does not grant its
  multiples or compositions),
* ``btk``/``ksk`` gate the one-shot bit bootstrap and its repetition,
* depth budgets are charged per multiplication / bootstrap lineage.

Lattice internals (noise, modulus chains, relinearization math) are out of
scope; `Table`-style parameters can be carried as inert metadata by callers.
Slot arithmetic is delegated to :mod:`vhelab.kernels`, so contexts require
t < 2^31 (every configured experiment is far below).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    AccessDenied,
    BootstrapBudgetExceeded,
    DepthExceeded,
    KeyMismatch,
    MissingBtk,
    MissingRlk,
    MissingRtk,
    MixedKeyTag,
    MixedModulus,
    NotDivisible,
    PrimeModulus,
    UnknownKey,
    WrongKeyTag,
)
from .modring import Modulus, factor_prime_power

KEY_TAG_BASE = "sk"
KEY_TAG_BOOT = "sk'"


@dataclass(frozen=True)
class Capabilities:
    """Key material and budgets granted to the evaluating server."""

    has_rlk: bool = False
    rtk_indices: frozenset[int] = frozenset()
    has_btk: bool = False
    has_ksk: bool = False
    has_req_oracle: bool = False
    mult_depth_budget: int | None = None
    bootstrap_depth_budget: int | None = 1
    keep_div_depth_cost: int = 1

    def __post_init__(self):
        object.__setattr__(self, "rtk_indices", frozenset(int(i) for i in self.rtk_indices))


def rotation_keys_pow2(n: int) -> frozenset[int]:
    """The power-of-two stride set {1, 2, 4, ..., n/2} used by block gadgets."""
    return frozenset(1 << j for j in range((n - 1).bit_length()) if (1 << j) <= n // 2)


class VecCt:
    """Opaque SIMD ciphertext handle: key id, depth and modulus are public,
    the payload is not."""

    __slots__ = ("_ctx", "_slots", "key_id", "depth", "modulus", "handle")

    def __init__(self, ctx, slots, key_id, depth, modulus):
        self._ctx = ctx
        self._slots = slots
        self.key_id = key_id
        self.depth = depth
        self.modulus = modulus
        self.handle = next(ctx._handle_counter)

    @property
    def width(self) -> int:
        return self._slots.shape[0]

    def __repr__(self):
        return (
            f"VecCt(handle={self.handle}, key={self.key_id}, width={self.width}, "
            f"t={self.modulus.t}, depth={self.depth})"
        )


class BitCt:
    """Opaque bit ciphertext handle over Z_2 or Z_3 with a key tag and
    bootstrap lineage count."""

    __slots__ = ("_ctx", "_value", "modulus", "key_tag", "boot_count", "handle")

    def __init__(self, ctx, value, modulus, key_tag, boot_count):
        self._ctx = ctx
        self._value = value % modulus
        self.modulus = modulus
        self.key_tag = key_tag
        self.boot_count = boot_count
        self.handle = next(ctx._handle_counter)

    def __repr__(self):
        return (
            f"BitCt(handle={self.handle}, mod={self.modulus}, tag={self.key_tag}, "
            f"boots={self.boot_count})"
        )


class Context:
    """One evaluation session: keys, capabilities, op counters, trusted access.

    A context is single-writer; run one per Monte Carlo trial for parallelism.
    Handles are valid only within their own context.
    """

    def __init__(self, modulus: Modulus | int, slot_count: int, caps: Capabilities | None = None,
                 num_keys: int = 1):
        if isinstance(modulus, int):
            modulus = factor_prime_power(modulus)
        if modulus.t >= kernels.MAX_MODULUS:
            raise ValueError(f"modulus {modulus.t} exceeds the kernel bound 2^31")
        if slot_count < 1:
            raise ValueError("slot_count must be positive")
        if num_keys < 1:
            raise ValueError("num_keys must be positive")
        self.modulus = modulus
        self.slot_count = slot_count
        self.caps = caps if caps is not None else Capabilities()
        self.num_keys = num_keys
        self.counters: Counter[str] = Counter()
        self._handle_counter = itertools.count()

    # ------------------------------------------------------------- trusted

    def encrypt_vec(self, key_id: int, values) -> VecCt:
        """Client-side encryption; round-trips exactly with decrypt."""
        self._check_key(key_id)
        slots = kernels.as_slots(values, self.modulus.t, self.slot_count)
        self.counters["enc"] += 1
        return VecCt(self, slots, key_id, 0, self.modulus)

    def decrypt(self, ct: VecCt) -> np.ndarray:
        """Client-side decryption of a vector ciphertext."""
        self._own_vec(ct)
        self.counters["dec"] += 1
        return ct._slots.copy()

    def encrypt_bit(self, value: int, modulus: int = 2, key_tag: str = KEY_TAG_BASE) -> BitCt:
        if modulus not in (2, 3):
            raise ValueError("bit ciphertexts live over Z_2 or Z_3")
        self.counters["enc_bit"] += 1
        return BitCt(self, value, modulus, key_tag, 0)

    def decrypt_bit(self, ct: BitCt) -> int:
        if ct._ctx is not self:
            raise UnknownKey("bit ciphertext from another context")
        self.counters["dec_bit"] += 1
        return ct._value

    def adversary_view(self) -> "AdversaryView":
        return AdversaryView(self)

    def snapshot_counters(self) -> dict[str, int]:
        return dict(self.counters)

    # ------------------------------------------------------------- checks

    def _check_key(self, key_id: int):
        if not (0 <= key_id < self.num_keys):
            raise UnknownKey(f"key id {key_id} not registered (have {self.num_keys})")

    def _own_vec(self, ct: VecCt):
        if not isinstance(ct, VecCt) or ct._ctx is not self:
            raise UnknownKey("ciphertext does not belong to this context")

    def _pair(self, a: VecCt, b: VecCt):
        self._own_vec(a)
        self._own_vec(b)
        if a.key_id != b.key_id:
            raise KeyMismatch(f"keys {a.key_id} vs {b.key_id}")
        if a.modulus.t != b.modulus.t:
            raise MixedModulus(f"moduli {a.modulus.t} vs {b.modulus.t}")

    def _plain(self, c, t: int, width: int):
        arr = np.asarray(c)
        if arr.ndim == 0:
            return int(arr) % t
        return kernels.as_slots(arr, t, width)

    # ----------------------------------------------------------- vector ops

    def _add(self, a: VecCt, b: VecCt) -> VecCt:
        self._pair(a, b)
        self.counters["add"] += 1
        slots = kernels.add_vv(a._slots, b._slots, a.modulus.t)
        return VecCt(self, slots, a.key_id, max(a.depth, b.depth), a.modulus)

    def _sub(self, a: VecCt, b: VecCt) -> VecCt:
        self._pair(a, b)
        self.counters["sub"] += 1
        slots = kernels.sub_vv(a._slots, b._slots, a.modulus.t)
        return VecCt(self, slots, a.key_id, max(a.depth, b.depth), a.modulus)

    def _cadd(self, a: VecCt, c) -> VecCt:
        self._own_vec(a)
        self.counters["cadd"] += 1
        t = a.modulus.t
        cc = self._plain(c, t, a.width)
        if isinstance(cc, int):
            slots = kernels.add_vs(a._slots, cc, t)
        else:
            slots = kernels.add_vv(a._slots, cc, t)
        return VecCt(self, slots, a.key_id, a.depth, a.modulus)

    def _cmult(self, a: VecCt, c) -> VecCt:
        self._own_vec(a)
        self.counters["cmult"] += 1
        t = a.modulus.t
        cc = self._plain(c, t, a.width)
        if isinstance(cc, int):
            slots = kernels.mul_vs(a._slots, cc, t)
        else:
            slots = kernels.mul_vv(a._slots, cc, t)
        return VecCt(self, slots, a.key_id, a.depth, a.modulus)

    def _mult(self, a: VecCt, b: VecCt) -> VecCt:
        self._pair(a, b)
        if not self.caps.has_rlk:
            raise MissingRlk("ciphertext multiplication requires the relinearization key")
        depth = max(a.depth, b.depth) + 1
        budget = self.caps.mult_depth_budget
        if budget is not None and depth > budget:
            raise DepthExceeded(f"depth {depth} exceeds budget {budget}")
        self.counters["mult"] += 1
        slots = kernels.mul_vv(a._slots, b._slots, a.modulus.t)
        return VecCt(self, slots, a.key_id, depth, a.modulus)

    def _rotate(self, a: VecCt, i: int) -> VecCt:
        self._own_vec(a)
        idx = i % a.width
        if idx != 0 and idx not in self.caps.rtk_indices:
            raise MissingRtk(idx)
        self.counters["rotate"] += 1
        return VecCt(self, kernels.rotate(a._slots, idx), a.key_id, a.depth, a.modulus)

    def _embed_plain(self, values, key_id: int = 0) -> VecCt:
        """Trivial (noiseless, public) embedding of a known plaintext as a
        ciphertext — the (0, delta*m) trick; capability-free and adversary-legal."""
        self._check_key(key_id)
        self.counters["embed"] += 1
        slots = kernels.as_slots(values, self.modulus.t, self.slot_count)
        return VecCt(self, slots, key_id, 0, self.modulus)

    # ---------------------------------------------------------- rescale ops

    def _mod_rescale_div_p(self, a: VecCt) -> VecCt:
        self._own_vec(a)
        mod = a.modulus
        if mod.r == 1:
            raise PrimeModulus("divide-by-p rescaling needs r > 1")
        if np.any(a._slots % mod.p != 0):
            raise NotDivisible("a slot is not divisible by p")
        self.counters["rescale"] += 1
        new_mod = Modulus(mod.p, mod.r - 1)
        return VecCt(self, (a._slots // mod.p).astype(np.uint64), a.key_id, a.depth, new_mod)

    def _div_p_power_keep_modulus(self, a: VecCt, k: int) -> VecCt:
        self._own_vec(a)
        mod = a.modulus
        if mod.r == 1:
            raise PrimeModulus("keep-modulus division needs r > 1")
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self.caps.has_rlk:
            raise MissingRlk("keep-modulus division is a deep homomorphic procedure (needs rlk)")
        divisor = mod.p**k
        if np.any(a._slots % divisor != 0):
            raise NotDivisible(f"a slot is not divisible by p^{k}")
        depth = a.depth + self.caps.keep_div_depth_cost
        budget = self.caps.mult_depth_budget
        if budget is not None and depth > budget:
            raise DepthExceeded(f"depth {depth} exceeds budget {budget}")
        self.counters["keep_div"] += 1
        return VecCt(self, (a._slots // divisor).astype(np.uint64), a.key_id, depth, mod)

    # -------------------------------------------------------------- bit ops

    def _tfhe_linear(self, coeffs, cts, const: int = 0) -> BitCt:
        if not cts:
            raise ValueError("tfhe_linear needs at least one ciphertext")
        for ct in cts:
            if not isinstance(ct, BitCt) or ct._ctx is not self:
                raise UnknownKey("bit ciphertext does not belong to this context")
        mods = {ct.modulus for ct in cts}
        if len(mods) != 1:
            raise MixedModulus(f"mixed bit moduli {sorted(mods)}")
        tags = {ct.key_tag for ct in cts}
        if len(tags) != 1:
            raise MixedKeyTag(f"mixed key tags {sorted(tags)}")
        P = cts[0].modulus
        coeffs = list(coeffs)
        if len(coeffs) != len(cts):
            raise ValueError("coefficient/ciphertext length mismatch")
        self.counters["tfhe_linear"] += 1
        total = const
        for c, ct in zip(coeffs, cts):
            total += int(c) * ct._value
        boots = max(ct.boot_count for ct in cts)
        return BitCt(self, total % P, P, cts[0].key_tag, boots)

    def _cppbs23(self, a: BitCt) -> BitCt:
        if not isinstance(a, BitCt) or a._ctx is not self:
            raise UnknownKey("bit ciphertext does not belong to this context")
        if not self.caps.has_btk:
            raise MissingBtk("bootstrapping requires the bootstrapping key")
        if a.key_tag != KEY_TAG_BASE and not self.caps.has_ksk:
            raise WrongKeyTag(
                "input is already under the post-bootstrap key and no key-switching key is granted"
            )
        if a.modulus != 2:
            raise MixedModulus("the 2-to-3 bootstrap consumes a Z_2 ciphertext")
        new_count = a.boot_count + 1
        budget = self.caps.bootstrap_depth_budget
        if budget is not None and new_count > budget:
            raise BootstrapBudgetExceeded(
                f"lineage would reach {new_count} bootstraps, budget {budget}"
            )
        self.counters["cppbs"] += 1
        # value map 0 -> 0, 1 -> 1 into Z_3 under the fresh tag
        return BitCt(self, a._value, 3, KEY_TAG_BOOT, new_count)


class AdversaryView:
    """Operation surface handed to attack code.

    Exposes homomorphic operations over opaque handles plus public scenario
    facts (slot count, plaintext modulus, capability flags). No payload
    accessor exists on this class; `decrypt` is an explicit trap.
    """

    __slots__ = ("_ctx",)

    def __init__(self, ctx: Context):
        self._ctx = ctx

    # public scenario facts
    @property
    def slot_count(self) -> int:
        return self._ctx.slot_count

    @property
    def modulus(self) -> Modulus:
        return self._ctx.modulus

    @property
    def capabilities(self) -> Capabilities:
        return self._ctx.caps

    # vector ops
    def add(self, a, b):
        return self._ctx._add(a, b)

    def sub(self, a, b):
        return self._ctx._sub(a, b)

    def cadd(self, a, c):
        return self._ctx._cadd(a, c)

    def cmult(self, a, c):
        return self._ctx._cmult(a, c)

    def mult(self, a, b):
        return self._ctx._mult(a, b)

    def rotate(self, a, i):
        return self._ctx._rotate(a, i)

    def embed_plain(self, values, key_id: int = 0):
        return self._ctx._embed_plain(values, key_id)

    def mod_rescale_div_p(self, a):
        return self._ctx._mod_rescale_div_p(a)

    def div_p_power_keep_modulus(self, a, k):
        return self._ctx._div_p_power_keep_modulus(a, k)

    # bit ops
    def tfhe_linear(self, coeffs, cts, const=0):
        return self._ctx._tfhe_linear(coeffs, cts, const)

    def cppbs23(self, a):
        return self._ctx._cppbs23(a)

    # traps
    def decrypt(self, ct):
        raise AccessDenied("decryption is not available to the evaluating server")

    def decrypt_bit(self, ct):
        raise AccessDenied("decryption is not available to the evaluating server")
