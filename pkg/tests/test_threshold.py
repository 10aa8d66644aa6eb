import math

import numpy as np
import pytest

from lamcert.threshold import choose_b, decay_exponent, threshold_exponent

# Frozen independently: stationarity of (p-1)/(b^{p-1}+1) + b/(b+1) checked by
# calculus (e.g. 2.25 sqrt(b) (1+b)^2 = (1+b^1.5)^2 at p=2.5) plus 2e6-point
# log-grid scans.
FROZEN = {
    1.2: (1.0472136, 123.0),
    1.5: (1.0449899, 27.82),
    2.5: (1.5481568, 0.14289),
    3.0: (2.0899798, 0.18959),
    4.0: (3.1547005, 0.26795),
}


def test_decay_exponent_is_one_for_p_two():
    for b in (1e-6, 0.3, 1.7, 1e8):
        assert math.isclose(decay_exponent(b, 2.0), 1.0, rel_tol=0, abs_tol=1e-12)


def test_decay_exponent_value():
    # (0.5, 3): 2/1.25 + 0.5/1.5
    assert math.isclose(decay_exponent(0.5, 3.0), 2.0 / 1.25 + 0.5 / 1.5,
                        rel_tol=1e-15)


def test_decay_exponent_large_b_limit():
    assert math.isclose(decay_exponent(1e8, 3.0), 1.0, abs_tol=1e-7)


@pytest.mark.parametrize("p,expected", sorted(FROZEN.items()))
def test_threshold_values(p, expected):
    q1, b_star = threshold_exponent(p)
    assert math.isclose(q1, expected[0], abs_tol=2e-6)
    assert math.isclose(b_star, expected[1], rel_tol=2e-3)


def test_threshold_p2_is_exactly_one():
    q1, _ = threshold_exponent(2.0)
    assert abs(q1 - 1.0) <= 1e-6


def test_threshold_exceeds_trivial_bound():
    for p in (1.2, 1.5, 2.5, 3.0, 4.0):
        q1, _ = threshold_exponent(p)
        assert q1 > max(p - 1.0, 1.0) + 0.02


def test_threshold_grid_density_invariance():
    for p in (1.5, 2.5, 3.0, 4.0):
        q_a, _ = threshold_exponent(p, grid_points=400)
        q_b, _ = threshold_exponent(p, grid_points=800)
        assert abs(q_a - q_b) <= 1e-9


def test_choose_b_gives_admissible_parameter():
    b = choose_b(3.0, 2.05)
    assert decay_exponent(b, 3.0) > 2.05
    b = choose_b(4.0, 3.05)
    assert 0.2 < b < 0.35
    assert decay_exponent(b, 4.0) > 3.1


def test_choose_b_rejects_p2_and_out_of_range():
    with pytest.raises(ValueError, match="admissible"):
        choose_b(2.0, 1.1)
    with pytest.raises(ValueError, match="admissible"):
        choose_b(3.0, 2.5)   # above q1(3) ~ 2.09
    with pytest.raises(ValueError, match="admissible"):
        choose_b(3.0, 1.9)   # below max(p-1, 1) = 2


def test_threshold_rejects_bad_p():
    with pytest.raises(ValueError):
        threshold_exponent(1.0)
