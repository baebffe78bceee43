"""Slot-wise Z_t vector kernels with two interchangeable backends.

The compiled Cython core (`_fastcore`) is preferred when present; otherwise a
NumPy implementation with identical semantics is used. `VHELAB_BACKEND=c`
forces the compiled core (raising if it was not built), `VHELAB_BACKEND=py`
forces the NumPy fallback. All kernels take canonical uint64 arrays with
values in [0, t) and return new canonical arrays; t must stay below 2^31 so
products fit in 64 bits.

`benchmarks/bench_kernels.py` compares the two backends head to head.
"""

import os

import numpy as np

from . import numpy_backend

_requested = os.environ.get("VHELAB_BACKEND", "").lower()
if _requested not in ("", "c", "py"):
    raise ValueError(f"VHELAB_BACKEND must be 'c' or 'py', got {_requested!r}")

_impl = None
BACKEND = "py"
if _requested in ("", "c"):
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise
if _impl is None:
    _impl = numpy_backend

MAX_MODULUS = 1 << 31


def as_slots(values, t: int, width: int | None = None) -> np.ndarray:
    """Canonicalize ints / sequences / arrays into a uint64 slot vector mod t."""
    arr = np.asarray(values)
    if arr.ndim == 0:
        if width is None:
            raise ValueError("scalar payload needs an explicit width")
        arr = np.full(width, int(arr) % t, dtype=np.uint64)
        return arr
    arr = np.mod(arr.astype(np.int64, copy=False), t).astype(np.uint64)
    if width is not None and arr.shape != (width,):
        raise ValueError(f"expected {width} slots, got shape {arr.shape}")
    return arr


add_vv = _impl.add_vv
sub_vv = _impl.sub_vv
mul_vv = _impl.mul_vv
add_vs = _impl.add_vs
mul_vs = _impl.mul_vs
pow_vs = _impl.pow_vs
geom_sum_v = _impl.geom_sum_v


def rotate(a: np.ndarray, i: int) -> np.ndarray:
    """Cyclic left shift: rotate((a,b,c,d), 1) == (b,c,d,a)."""
    return np.roll(a, -i)
