"""Independent reference implementations used to pin expected test values.

Everything here is deliberately decoupled from the fuzzyrisk package: plain
closures for membership curves and an explicit trapezoid-rule accumulation
for the centroid. Tests compare engine output against these, never the
other way around.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def tri(a: float, m: float, b: float) -> Callable[[float], float]:
    """Triangular curve as a plain closure; shoulders peak at the shared point."""

    def mu(x: float) -> float:
        if x < a or x > b:
            return 0.0
        if x == m:
            return 1.0
        if x < m:
            return (x - a) / (m - a)
        if x < b:
            return (b - x) / (b - m)
        return 0.0

    return mu


def clip(mu: Callable[[float], float], level: float) -> Callable[[float], float]:
    return lambda x: min(mu(x), level)


def union(*mus: Callable[[float], float]) -> Callable[[float], float]:
    return lambda x: max(mu(x) for mu in mus)


def centroid_dense(
    mu: Callable[[float], float], lo: float, hi: float, n: int = 100001
) -> float:
    """Centroid of area via trapezoid rule on a dense uniform grid.

    Hand-rolled accumulation (half-weight endpoints) so it shares no code
    with the engine's quadrature.
    """
    h = (hi - lo) / (n - 1)
    num = 0.0
    den = 0.0
    for i in range(n):
        x = lo + i * h
        w = 0.5 if i in (0, n - 1) else 1.0
        y = mu(x)
        num += w * x * y
        den += w * y
    if den == 0.0:
        raise ValueError("centroid of an all-zero set is undefined")
    return num / den


def tri_grid(a: float, m: float, b: float, xs: np.ndarray) -> np.ndarray:
    """Triangle sampled by linear interpolation through its vertices.

    Uses np.interp rather than the piecewise formula, so it is a different
    evaluation path from the package's membership functions.
    """
    xp: list[float] = []
    fp: list[float] = []
    if m > a:
        xp.append(a)
        fp.append(0.0)
    xp.append(m)
    fp.append(1.0)
    if b > m:
        xp.append(b)
        fp.append(0.0)
    ys = np.interp(xs, xp, fp)
    ys[xs < a] = 0.0
    ys[xs > b] = 0.0
    return ys


def centroid_grid(xs: np.ndarray, ys: np.ndarray) -> float:
    """Trapezoid-rule centroid on a uniform grid via explicit endpoint weights."""
    w = np.ones_like(xs)
    w[0] = w[-1] = 0.5
    den = float(np.dot(w, ys))
    if den == 0.0:
        raise ValueError("centroid of an all-zero set is undefined")
    return float(np.dot(w, xs * ys)) / den


def uniform_peaks(lo: float, hi: float, k: int) -> list[float]:
    step = (hi - lo) / (k - 1)
    return [lo + i * step for i in range(k)]


def partition_terms(lo: float, hi: float, k: int) -> list[Callable[[float], float]]:
    """The k-term uniform triangular partition, built independently."""
    peaks = uniform_peaks(lo, hi, k)
    terms = []
    for i, p in enumerate(peaks):
        left = peaks[i - 1] if i > 0 else p
        right = peaks[i + 1] if i < k - 1 else p
        terms.append(tri(left, p, right))
    return terms
