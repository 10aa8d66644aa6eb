import math

import pytest

from lamcert.flux import p_flux, residual_field
from lamcert.laminate import AtomLabel, matrix_family


def test_p_flux_zero_vector():
    for p in (1.5, 2.0, 3.0, 4.0):
        assert p_flux((0.0, 0.0), p) == (0.0, 0.0)


def test_p_flux_closed_forms_on_axis():
    # rows of B_i and C_i
    b, i, p = 0.5, 3, 3.0
    fx, fy = p_flux((b * (i - 1), 0.0), p)
    assert fy == 0.0
    assert math.isclose(fx, (b * (i - 1)) ** (p - 1), rel_tol=1e-15)
    fx, fy = p_flux((-float(i), 0.0), p)
    assert fx == -float(i) ** (p - 1)
    assert fy == 0.0


def test_p_flux_generic_direction():
    g = (3.0, 4.0)
    fx, fy = p_flux(g, 3.0)
    # |g| = 5, |g|^{p-2} g = 5 g
    assert math.isclose(fx, 15.0, rel_tol=1e-15)
    assert math.isclose(fy, 20.0, rel_tol=1e-15)


def test_p_flux_rejects_bad_p():
    with pytest.raises(ValueError):
        p_flux((1.0, 0.0), 1.0)


@pytest.mark.parametrize("p", [1.5, 3.0, 4.0])
@pytest.mark.parametrize("b", [0.19, 0.27, 0.5, 100.0])
def test_residual_bitwise_zero_on_kernel_matrices(p, b):
    for i in range(2, 200):
        for sign in (1, -1):
            for kind in ("B", "C"):
                m = matrix_family(AtomLabel(kind, i, sign), p, b)
                assert residual_field(m, p) == (0.0, 0.0)


def test_residual_closed_form_on_A():
    p, b, n = 3.0, 0.5, 7
    m = matrix_family(AtomLabel("A", n, 1), p, b)
    rx, ry = residual_field(m, p)
    assert ry == 0.0
    expected = (b ** (p - 1) + 1.0) * n ** (p - 1)
    assert math.isclose(rx, expected, rel_tol=1e-14)
