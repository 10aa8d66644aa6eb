"""p-Laplacian flux algebra.

For a gradient pair M = (grad u; grad v) the flux residual is

    f(M) = |grad u|^{p-2} grad u - (-dv/dy, dv/dx)

i.e. the p-flux of u minus the rotated gradient of v.  The whole point of
the matrix families used by the laminate construction is that f vanishes on
the B and C matrices even though grad u does not; the residual must come out
*bitwise* zero there, which is why :func:`p_flux` routes axis-aligned
gradients through the same ``signed_pow`` kernel that builds the matrices.
"""

from __future__ import annotations

import math

from .mat2 import Mat2, Vec2, signed_pow


def p_flux(g: Vec2, p: float) -> Vec2:
    """|g|^{p-2} g, continuously extended by 0 at g = 0 (valid for p > 1)."""
    if p <= 1.0:
        raise ValueError(f"p must exceed 1, got p={p}")
    g1, g2 = g
    if g1 == 0.0 and g2 == 0.0:
        return (0.0, 0.0)
    # axis-aligned branches reuse signed_pow so that atoms built from the
    # same kernel cancel exactly in residual_field
    if g2 == 0.0:
        return (signed_pow(g1, p - 1.0), 0.0)
    if g1 == 0.0:
        return (0.0, signed_pow(g2, p - 1.0))
    r = math.hypot(g1, g2)
    s = r ** (p - 2.0)
    return (s * g1, s * g2)


def rotated_row2(m: Mat2) -> Vec2:
    """The vector (-dv/dy, dv/dx) read off a gradient matrix."""
    return (-m.m22, m.m21)


def residual_field(m: Mat2, p: float) -> Vec2:
    """f(M) = p_flux(row1) - rotated row2.  Zero iff M solves the kernel identity."""
    flux = p_flux(m.row1(), p)
    rot = rotated_row2(m)
    return (flux[0] - rot[0], flux[1] - rot[1])
