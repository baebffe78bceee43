"""Forgery against the verifiable OPRF: shift every response by a multiple
of one input bit.

The server bootstraps input bit u directly (depth 1, in parallel with the
PRF pipeline — never on top of it) and adds trit_j · [bit u] to output trit j
of every element.  Elements whose bit u is 0 are untouched, so the spot
checks pass whenever every picked pair happens to have that bit clear, while
any message input with the bit set comes back altered.
"""

from __future__ import annotations

from ..vaddg import N_IN, N_OUT, PrfKeyModel, eval_prf_ct


def vaddg_attack(view, key: PrfKeyModel, cts, u: int, t_vec) -> list:
    """Forge all rows of a query; returns responses in sent order."""
    if not 0 <= u < N_IN:
        raise ValueError(f"bit index must be in 0..{N_IN - 1}")
    trits = [int(v) % 3 for v in t_vec]
    if len(trits) != N_OUT or not any(trits):
        raise ValueError(f"need {N_OUT} trits, not all zero")

    forged = []
    for row in cts:
        honest = eval_prf_ct(view, key, row)
        shift = view.cppbs23(row[u])
        forged.append([
            honest[j] if trits[j] == 0
            else view.tfhe_linear([1, trits[j]], [honest[j], shift])
            for j in range(N_OUT)
        ])
    return forged
