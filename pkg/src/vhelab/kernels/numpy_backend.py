"""NumPy reference backend for the slot kernels.

Inputs are canonical uint64 vectors (< t) and t < 2^31, so every intermediate
product fits in uint64 without overflow. Width-1 vectors take a plain-int fast
path: ufunc dispatch overhead dwarfs the arithmetic there, and the simulator
runs tens of millions of width-1 ops in the per-slot-key experiments.
"""

import numpy as np


def _one(value: int) -> np.ndarray:
    return np.array([value], dtype=np.uint64)


def add_vv(a, b, t):
    if a.size == 1:
        return _one((int(a[0]) + int(b[0])) % t)
    return (a + b) % np.uint64(t)


def sub_vv(a, b, t):
    if a.size == 1:
        return _one((int(a[0]) - int(b[0])) % t)
    return (a + (np.uint64(t) - b)) % np.uint64(t)


def mul_vv(a, b, t):
    if a.size == 1:
        return _one((int(a[0]) * int(b[0])) % t)
    return (a * b) % np.uint64(t)


def add_vs(a, c, t):
    if a.size == 1:
        return _one((int(a[0]) + c) % t)
    return (a + np.uint64(c % t)) % np.uint64(t)


def mul_vs(a, c, t):
    if a.size == 1:
        return _one((int(a[0]) * c) % t)
    return (a * np.uint64(c % t)) % np.uint64(t)


def pow_vs(a, e, t):
    """Element-wise a^e mod t by square-and-multiply; pow_vs(a, 0) is all-ones."""
    if a.size == 1:
        return _one(pow(int(a[0]), e, t))
    t64 = np.uint64(t)
    result = np.ones_like(a)
    base = a.copy()
    while e:
        if e & 1:
            result = (result * base) % t64
        base = (base * base) % t64
        e >>= 1
    return result


def geom_sum_v(w, k, t):
    """Element-wise 1 + w + ... + w^(k-1) mod t via the division-free doubling ladder."""
    if k == 0:
        return np.zeros_like(w)
    if w.size == 1:
        s, big = 1, int(w[0])
        for bit in bin(k)[3:]:
            s = (s + s * big) % t
            big = (big * big) % t
            if bit == "1":
                s = (s + big) % t
                big = (big * int(w[0])) % t
        return _one(s)
    t64 = np.uint64(t)
    s = np.ones_like(w)
    big = w.copy()
    for bit in bin(k)[3:]:
        s = (s + s * big) % t64
        big = (big * big) % t64
        if bit == "1":
            s = (s + big) % t64
            big = (big * w) % t64
    return s
