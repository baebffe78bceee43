"""Interval and test statistics for Monte Carlo counts."""

from __future__ import annotations

import math

Z95 = 1.959963984540054  # two-sided 95% normal quantile


def wilson_ci(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval; the full [0, 1] when there are no trials."""
    if trials == 0:
        return (0.0, 1.0)
    if not 0 <= successes <= trials:
        raise ValueError("success count outside 0..trials")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials))
    return (max(0.0, center - half), min(1.0, center + half))


def z_score(successes: int, trials: int, p_theory) -> float | None:
    """Standard score of the observed count under the theoretical rate.

    None when the null is degenerate (p in {0,1}) or there are no trials —
    those cases are all-or-nothing and belong to exact assertions instead.
    """
    if trials == 0 or p_theory is None:
        return None
    p = float(p_theory)
    if p <= 0.0 or p >= 1.0:
        return None
    sd = math.sqrt(p * (1.0 - p) / trials)
    return (successes / trials - p) / sd
