"""Composite Gauss-Legendre rules on panels."""

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=64)
def _reference_rule(order):
    x, w = leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(lo, hi, order):
    """Nodes and weights of a single ``order``-point rule on ``[lo, hi]``."""
    x, w = _reference_rule(order)
    half = 0.5 * (hi - lo)
    return half * x + 0.5 * (hi + lo), half * w


def composite_rule(breaks, order):
    """Gauss-Legendre rule on every interval between consecutive ``breaks``.

    Parameters
    ----------
    breaks : array_like
        Strictly increasing panel boundaries.
    order : int
        Nodes per panel.

    Returns
    -------
    nodes, weights : ndarray
    """
    breaks = np.asarray(breaks, dtype=float)
    if breaks.ndim != 1 or breaks.size < 2 or np.any(np.diff(breaks) <= 0):
        raise ValueError("panel breaks must be strictly increasing")
    x, w = _reference_rule(order)
    lo = breaks[:-1, None]
    half = 0.5 * np.diff(breaks)[:, None]
    nodes = lo + half * (x[None, :] + 1.0)
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def panel_breaks(lo, hi, max_width, fixed=()):
    """Panel boundaries covering ``[lo, hi]`` with every panel at most ``max_width`` wide.

    Points in ``fixed`` that fall strictly inside the interval are always panel
    boundaries (used for the potential discontinuities).
    """
    if hi <= lo:
        raise ValueError("empty interval")
    cuts = sorted({lo, hi, *(p for p in fixed if lo < p < hi)})
    out = [cuts[0]]
    for left, right in zip(cuts[:-1], cuts[1:]):
        n = max(1, int(np.ceil((right - left) / max_width - 1e-12)))
        out.extend(np.linspace(left, right, n + 1)[1:])
    return np.asarray(out)


def geometric_breaks(inner, outer, ratio):
    """Breaks from ``inner`` to ``outer`` (both > 0) growing by ``ratio`` per panel."""
    out = [inner]
    while out[-1] < outer:
        out.append(min(out[-1] * ratio, outer))
    return np.asarray(out)


def trapezoid_weights(grid):
    """Trapezoid weights on a (possibly non-uniform) strictly increasing grid."""
    grid = np.asarray(grid, dtype=float)
    w = np.zeros_like(grid)
    dx = np.diff(grid)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    return w
