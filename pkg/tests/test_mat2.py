import math

import pytest
from hypothesis import given, strategies as st

from lamcert.mat2 import Mat2, outer, rank_one_connection, signed_pow


def test_signed_pow_zero_and_signs():
    assert signed_pow(0.0, 0.5) == 0.0
    assert signed_pow(2.0, 3.0) == 8.0
    assert signed_pow(-2.0, 3.0) == -8.0
    # exact negation symmetry, needed for bitwise flux cancellation
    assert signed_pow(-3.7, 1.6) == -signed_pow(3.7, 1.6)


def test_mat2_basics():
    m = Mat2(1.0, 2.0, 3.0, 4.0)
    assert m.det() == -2.0
    assert m.frobenius() == math.sqrt(30.0)
    assert m.apply(1.0, 1.0) == (3.0, 7.0)
    assert m.neg().add(m) == Mat2.zero()


def test_rank_one_connection_diagonal_difference():
    # difference diag(0, d) factors as (0, d) (x) (0, 1)
    m1 = Mat2.diag(0.5, 1.0)
    m2 = Mat2.diag(0.5, -0.25)
    res = rank_one_connection(m1, m2)
    assert res is not None
    a, n = res
    assert n == (0.0, 1.0)
    assert a == (0.0, 1.25)


def test_rank_one_connection_rejects_rank_zero_and_two():
    m = Mat2.diag(1.0, 2.0)
    assert rank_one_connection(m, m) is None
    assert rank_one_connection(Mat2.diag(1.0, 0.0), Mat2.diag(0.0, 1.0)) is None


def test_rank_one_canonical_sign():
    d = outer((1.0, -2.0), (-0.6, -0.8))
    res = rank_one_connection(d, Mat2.zero())
    assert res is not None
    a, n = res
    assert n[0] > 0.0
    recon = outer(a, n)
    assert recon.sub(d).frobenius() < 1e-12


@given(
    a1=st.floats(-10, 10), a2=st.floats(-10, 10),
    nx=st.floats(-1, 1), ny=st.floats(-1, 1),
)
def test_rank_one_roundtrip(a1, a2, nx, ny):
    norm = math.hypot(nx, ny)
    if norm < 1e-3 or math.hypot(a1, a2) < 1e-3:
        return
    d = outer((a1, a2), (nx / norm, ny / norm))
    res = rank_one_connection(d, Mat2.zero())
    assert res is not None
    a, n = res
    recon = outer(a, n)
    assert recon.sub(d).frobenius() <= 1e-10 * max(1.0, d.frobenius())
