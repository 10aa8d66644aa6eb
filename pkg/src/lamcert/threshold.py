"""Threshold exponent for the counterexample range.

The admissible growth exponents are governed by

    decay_exponent(b, p) = (p-1)/(b^{p-1} + 1) + b/(b + 1)

maximized over b in (0, inf).  The supremum exceeds max(p-1, 1) exactly when
p != 2 (at p = 2 the function is identically 1), which is what opens the
window of exponents r for which the gradient/flux integral ratio can be made
to blow up.  The maximizer is found on a coarse log-spaced grid and refined
by golden-section search; the function is smooth and in practice unimodal,
but the grid guards against surprises and the search never assumes
unimodality globally.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

GRID_POINTS = 400
GRID_LO = 1e-6
GRID_HI = 1e8
BRACKET_WIDTH = 1e-10
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def decay_exponent(b, p):
    """(p-1)/(b^{p-1}+1) + b/(b+1); accepts scalars or numpy arrays in b."""
    bq = b ** (p - 1.0)
    return (p - 1.0) / (bq + 1.0) + b / (b + 1.0)


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximizer of f on [lo, hi] to bracket width tol."""
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def threshold_exponent(p: float, grid_points: int = GRID_POINTS) -> Tuple[float, float]:
    """Maximize decay_exponent over b in (0, inf).

    Returns (q1, b_star).  Coarse log-spaced grid over [1e-6, 1e8] followed by
    golden-section refinement of the winning bracket down to a relative width
    of 1e-10.  For p = 2 the function is flat (identically 1) and the grid
    value is returned directly.
    """
    if p <= 1.0:
        raise ValueError(f"p must exceed 1, got p={p}")
    grid = np.logspace(math.log10(GRID_LO), math.log10(GRID_HI), grid_points)
    vals = decay_exponent(grid, p)
    k = int(np.argmax(vals))
    peak = float(vals[k])
    # flat plateau (p = 2): no interior bracket to refine
    if abs(peak - float(vals.min())) <= 1e-12 * max(1.0, abs(peak)):
        return peak, float(grid[k])
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, grid_points - 1)])
    # refine in log-b so the relative bracket-width stop is scale free
    g = lambda t: decay_exponent(math.exp(t), p)
    t_star = _golden_max(g, math.log(lo), math.log(hi), BRACKET_WIDTH)
    b_star = math.exp(t_star)
    return float(decay_exponent(b_star, p)), b_star


def choose_b(p: float, q_bar: float) -> float:
    """Pick b with decay_exponent(b, p) > q_bar, nudged off b = 1 if needed.

    q_bar must lie strictly between max(p-1, 1) and the threshold q1(p);
    outside that open interval no admissible b exists and a ValueError
    quoting the range is raised.
    """
    q1, b_star = threshold_exponent(p)
    lo = max(p - 1.0, 1.0)
    if not (lo < q_bar < q1):
        raise ValueError(
            f"q_bar must lie in the admissible open interval "
            f"(max(p-1, 1), q1(p)) = ({lo:.6g}, {q1:.6g}); got q_bar={q_bar}"
        )
    if abs(b_star - 1.0) < 1e-3:
        for candidate in (b_star + 1e-3, b_star - 1e-3):
            if candidate > 0.0 and decay_exponent(candidate, p) > q_bar:
                return candidate
        raise ValueError(
            f"no b bounded away from 1 attains decay_exponent > {q_bar}"
        )
    return b_star
