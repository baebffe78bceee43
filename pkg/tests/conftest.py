import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from vhelab.hesim import Capabilities, Context
from vhelab.modring import factor_prime_power

# Reproducible property runs: fixed derivation, no wall-clock deadline (the
# simulator's Python-level bookkeeping is slow enough to trip the default).
settings.register_profile(
    "vhelab",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("vhelab")


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


def make_ctx(t, width, *, rlk=True, rtk=(), num_keys=1, **caps_kw):
    """Context with the usual attack grants; rtk may be an int block size
    (power-of-two strides) or an explicit iterable of indices."""
    if isinstance(rtk, int):
        from vhelab.attacks import pow2_strides

        rtk = pow2_strides(rtk)
    caps = Capabilities(has_rlk=rlk, rtk_indices=frozenset(rtk), **caps_kw)
    return Context(factor_prime_power(t), width, caps, num_keys=num_keys)


def enc(ctx, values, key_id=0):
    return ctx.encrypt_vec(key_id, np.asarray(values, dtype=np.uint64))
