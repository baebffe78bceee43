"""Forgery circuits, written entirely against the adversary facade."""

from .gadgets import (
    chi_a,
    chi_a_pr,
    ct_equal,
    ct_equal_pr,
    ct_equal_scaled_pr,
    ct_geom_sum,
    ct_pow,
    duplicate_i,
    interpolate_affine,
    normalize_add_pr,
    normalize_k,
    pow2_strides,
    rescale_known,
    rotsum,
)
from .oprf import vaddg_attack
from .polyencode import pe_attack
from .replication import (
    cvs,
    cvs_pr,
    extended_attack,
    extended_attack_pr,
    forge_rep,
    recover_sc,
    recover_sc_pr,
)

__all__ = [
    "chi_a",
    "chi_a_pr",
    "ct_equal",
    "ct_equal_pr",
    "ct_equal_scaled_pr",
    "ct_geom_sum",
    "ct_pow",
    "cvs",
    "cvs_pr",
    "duplicate_i",
    "extended_attack",
    "extended_attack_pr",
    "forge_rep",
    "interpolate_affine",
    "normalize_add_pr",
    "normalize_k",
    "pe_attack",
    "pow2_strides",
    "recover_sc",
    "recover_sc_pr",
    "rescale_known",
    "rotsum",
    "vaddg_attack",
]
