"""Real 2x2 matrices and rank-one algebra.

A Mat2 holds the gradient of a planar map w = (u, v): row 1 is grad u,
row 2 is grad v.  Everything here is plain float arithmetic; bit-exact
reproducibility of derived quantities matters downstream (the flux residual
must vanish *exactly* on certain matrices), so shared scalar kernels such as
``signed_pow`` live here and are reused verbatim by the laminate and flux
modules.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Tuple

Vec2 = Tuple[float, float]

#: |det(M1-M2)| <= RANK_ONE_TOL * |M1-M2|^2 counts as rank one.
RANK_ONE_TOL = 1e-10
#: differences below this Frobenius norm count as rank zero.
RANK_ZERO_TOL = 1e-12


def signed_pow(x: float, q: float) -> float:
    """sign(x) * |x|**q, with signed_pow(0, q) = 0 for q > 0.

    Single shared kernel: matrix entries of the form -b^{p-1} i^{p-1} and the
    p-flux |g|^{p-2} g of g = (x, 0) must be built from *identical* float
    expressions so that their difference is exactly zero.
    """
    if x == 0.0:
        return 0.0
    return math.copysign(abs(x) ** q, x)


class Mat2(NamedTuple):
    m11: float
    m12: float
    m21: float
    m22: float

    @staticmethod
    def zero() -> "Mat2":
        return Mat2(0.0, 0.0, 0.0, 0.0)

    @staticmethod
    def diag(a: float, d: float) -> "Mat2":
        return Mat2(float(a), 0.0, 0.0, float(d))

    def row1(self) -> Vec2:
        return (self.m11, self.m12)

    def row2(self) -> Vec2:
        return (self.m21, self.m22)

    def neg(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def add(self, other: "Mat2") -> "Mat2":
        return Mat2(self.m11 + other.m11, self.m12 + other.m12,
                    self.m21 + other.m21, self.m22 + other.m22)

    def sub(self, other: "Mat2") -> "Mat2":
        return Mat2(self.m11 - other.m11, self.m12 - other.m12,
                    self.m21 - other.m21, self.m22 - other.m22)

    def scale(self, c: float) -> "Mat2":
        return Mat2(c * self.m11, c * self.m12, c * self.m21, c * self.m22)

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def frobenius(self) -> float:
        return math.sqrt(self.m11 ** 2 + self.m12 ** 2
                         + self.m21 ** 2 + self.m22 ** 2)

    def apply(self, x: float, y: float) -> Vec2:
        """Matrix-vector product M (x, y)."""
        return (self.m11 * x + self.m12 * y, self.m21 * x + self.m22 * y)

    def is_finite(self) -> bool:
        return all(math.isfinite(e) for e in self)


def outer(a: Vec2, n: Vec2) -> Mat2:
    """Rank-one product a (x) n."""
    return Mat2(a[0] * n[0], a[0] * n[1], a[1] * n[0], a[1] * n[1])


def frobenius_distance(m1: Mat2, m2: Mat2) -> float:
    return m1.sub(m2).frobenius()


def rank_one_connection(m1: Mat2, m2: Mat2) -> Optional[Tuple[Vec2, Vec2]]:
    """Factor M1 - M2 = a (x) n when the difference has rank one.

    Returns (a, n) with n a unit vector whose first nonzero component is
    positive, or None when the difference is (numerically) rank 0 or rank 2:
    rank 2 means |det| > RANK_ONE_TOL * |M1-M2|^2, rank 0 means
    |M1-M2| <= RANK_ZERO_TOL.
    """
    d = m1.sub(m2)
    norm = d.frobenius()
    if norm <= RANK_ZERO_TOL:
        return None
    if abs(d.det()) > RANK_ONE_TOL * norm * norm:
        return None
    r1 = d.row1()
    r2 = d.row2()
    n1_sq = r1[0] ** 2 + r1[1] ** 2
    n2_sq = r2[0] ** 2 + r2[1] ** 2
    row = r1 if n1_sq >= n2_sq else r2
    length = math.hypot(row[0], row[1])
    n = (row[0] / length, row[1] / length)
    # canonical sign: first nonzero component of n is positive
    if n[0] < 0.0 or (n[0] == 0.0 and n[1] < 0.0):
        n = (-n[0], -n[1])
    # rows of d are multiples of n, so a_i = row_i . n
    a = (r1[0] * n[0] + r1[1] * n[1], r2[0] * n[0] + r2[1] * n[1])
    return a, n
