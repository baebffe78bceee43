"""Forgery against the checksum-polynomial encoding.

The scheme hides the check point alpha by handing back every polynomial in Y;
the attack builds a switch polynomial P with P(0) = 0 and P(alpha) = 1 —
without knowing alpha — by raising the public ramp Enc(1,...,1)·Y to the
unit-group order, requadratizing after every product to stay inside the
degree cap.  Blending the honest result with a forged constant track along P
then leaves the checked track untouched while the delivered track is entirely
attacker-chosen.
"""

from __future__ import annotations

import numpy as np

from ..pe import CtPoly, pe_add, pe_mult, pe_sub
from ..rep import poly_eval_ct


def pe_attack(view, honest_F: CtPoly, inputs, g_coeffs, req_oracle) -> CtPoly:
    """Deliver g(message) on the value track while verification sees f(v).

    ``inputs`` are the session's input encodings; g is evaluated univariately
    on the constant track of the first one, which never needs the oracle.
    ``req_oracle`` is the client's requadratization callback; the square-and-
    multiply chain calls it once per product — ceil(log2(phi)) times for a
    power-of-two unit-group order.
    """
    t = view.modulus.t
    phi = view.modulus.phi
    width = view.slot_count

    ct_g = poly_eval_ct(view, inputs[0].coeffs[0], g_coeffs, t)
    forged = CtPoly([ct_g])

    ramp = CtPoly([
        view.embed_plain(np.zeros(width, dtype=np.uint64)),
        view.embed_plain(np.ones(width, dtype=np.uint64)),
    ])
    w = ramp
    for bit in bin(phi)[3:]:
        w = req_oracle(pe_mult(view, w, w))
        if bit == "1":
            w = req_oracle(pe_mult(view, w, ramp))

    return pe_add(view, forged, pe_mult(view, pe_sub(view, honest_F, forged), w))
