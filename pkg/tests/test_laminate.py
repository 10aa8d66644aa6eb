import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lamcert.laminate import (
    AtomLabel,
    SplitStep,
    SplitTree,
    build_laminate,
    cumulative_weights,
    initial_split,
    intermediate_matrix,
    laminate_from_dict,
    laminate_to_dict,
    log_tail_weight,
    matrix_family,
    min_support_distance,
    split_coefficients,
    tail_weight,
    validate_split_tree,
)
from lamcert.mat2 import Mat2
from lamcert.threshold import decay_exponent


# ---------------------------------------------------------------------------
# exact rational oracle for p = 3, b = 1/2 (all arithmetic stays in Q)
# ---------------------------------------------------------------------------

def rational_chain(N):
    """Replay the splitting chain with Fractions; returns weight dict by label."""
    b = Fraction(1, 2)
    bq = b ** 2                      # b^{p-1} with p = 3
    mu = 1 / (1 + bq)
    weights = {("B", 2): mu / 2, ("A", 1): (1 - mu) / 2}
    for i in range(1, N):
        alpha = Fraction((i + 1) ** 2 - i ** 2, (i + 1) ** 2) / \
            (1 + bq * Fraction(i ** 2, (i + 1) ** 2))
        beta = (1 - alpha) * b / ((b + 1) * (i + 1))
        gamma = 1 - alpha - beta
        w = weights.pop(("A", i))
        weights[("B", i + 1)] = weights.get(("B", i + 1), 0) + w * alpha
        weights[("C", i + 1)] = weights.get(("C", i + 1), 0) + w * beta
        weights[("A", i + 1)] = w * gamma
    return weights


def test_rational_oracle_sanity():
    w = rational_chain(2)
    assert w[("B", 2)] == Fraction(8, 17)
    assert w[("C", 2)] == Fraction(1, 204)
    assert w[("A", 2)] == Fraction(5, 204)
    assert 2 * sum(w.values()) == 1


# ---------------------------------------------------------------------------
# matrix families
# ---------------------------------------------------------------------------

def test_matrix_family_examples():
    assert matrix_family(AtomLabel("A", 0, 1), 3.0, 0.5) == Mat2.zero()
    assert matrix_family(AtomLabel("B", 2, 1), 3.0, 0.5) == Mat2.diag(0.5, -0.25)
    assert matrix_family(AtomLabel("C", 2, 1), 3.0, 0.5) == Mat2.diag(-2.0, 4.0)
    assert matrix_family(AtomLabel("C", 2, -1), 3.0, 0.5) == Mat2.diag(2.0, -4.0)


def test_matrix_family_rejects_bad_input():
    with pytest.raises(ValueError):
        matrix_family(AtomLabel("B", 0, 1), 3.0, 0.5)
    with pytest.raises(ValueError):
        matrix_family(AtomLabel("A", -1, 1), 3.0, 0.5)
    with pytest.raises(ValueError):
        matrix_family(AtomLabel("A", 1, 1), 1.0, 0.5)
    with pytest.raises(ValueError):
        matrix_family(AtomLabel("A", 1, 1), 3.0, 1.0)
    with pytest.raises(ValueError):
        matrix_family(AtomLabel("X", 1, 1), 3.0, 0.5)


# ---------------------------------------------------------------------------
# split coefficients
# ---------------------------------------------------------------------------

def test_split_coefficients_exact_values():
    alpha, beta, gamma = split_coefficients(1, 3.0, 0.5)
    assert math.isclose(alpha, 12 / 17, rel_tol=1e-14)
    assert math.isclose(beta, 5 / 102, rel_tol=1e-14)
    assert math.isclose(gamma, 25 / 102, rel_tol=1e-14)


def test_split_coefficients_sum_to_one():
    for i in (1, 2, 10, 1000):
        a, b_, g = split_coefficients(i, 2.5, 0.19)
        assert abs(a + b_ + g - 1.0) <= 1e-12


def test_split_coefficients_limits():
    a, b_, g = split_coefficients(10 ** 6, 3.0, 0.5)
    assert a < 1e-5 and b_ < 1e-6 and g > 1 - 1e-5


def test_split_coefficients_reject_root_index():
    with pytest.raises(ValueError):
        split_coefficients(0, 3.0, 0.5)


def _family_identity_defect(i, p, b):
    alpha, beta, gamma = split_coefficients(i, p, b)
    A_i = matrix_family(AtomLabel("A", i, 1), p, b)
    combo = matrix_family(AtomLabel("B", i + 1, 1), p, b).scale(alpha) \
        .add(matrix_family(AtomLabel("C", i + 1, 1), p, b).scale(beta)) \
        .add(matrix_family(AtomLabel("A", i + 1, 1), p, b).scale(gamma))
    scale = max(1.0, A_i.frobenius())
    return combo.sub(A_i).frobenius() / scale


@pytest.mark.parametrize("p,b", [(1.5, 27.8), (2.5, 0.143), (3.0, 0.19), (4.0, 0.268)])
def test_split_identity_sampled(p, b):
    for i in (1, 2, 3, 17, 100, 9999):
        assert _family_identity_defect(i, p, b) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(
    i=st.integers(min_value=1, max_value=10 ** 5),
    p=st.floats(min_value=1.1, max_value=5.0),
    b=st.floats(min_value=1e-3, max_value=1e3),
)
def test_split_identity_property(i, p, b):
    if abs(b - 1.0) < 1e-6:
        return
    assert _family_identity_defect(i, p, b) <= 1e-10


def test_gamma_product_form_consistency():
    # gamma as 1 - alpha - beta must match the telescoping product form
    for p, b in [(1.5, 27.8), (3.0, 0.19), (4.0, 0.268)]:
        q = p - 1.0
        for i in (1, 2, 5, 50, 1234):
            _, _, gamma = split_coefficients(i, p, b)
            prod_form = (1 + b ** q) / ((1 + 1 / i) ** q + b ** q) * \
                (1 - b / ((b + 1) * (i + 1)))
            assert abs(gamma - prod_form) <= 1e-12


# ---------------------------------------------------------------------------
# initial split
# ---------------------------------------------------------------------------

def test_initial_split_weights_and_labels():
    entries = initial_split(3.0, 0.5)
    assert len(entries) == 4
    assert math.isclose(math.fsum(w for w, _ in entries), 1.0, abs_tol=1e-15)
    table = {lab: w for w, lab in entries}
    assert math.isclose(table[AtomLabel("B", 2, 1)], 0.4, rel_tol=1e-15)
    assert math.isclose(table[AtomLabel("A", 1, 1)], 0.1, rel_tol=1e-15)
    # baricenter of the four weighted matrices is zero by ± symmetry
    m = Mat2.zero()
    for w, lab in entries:
        m = m.add(matrix_family(lab, 3.0, 0.5).scale(w))
    assert m.frobenius() <= 1e-15


def test_initial_split_steps_are_rank_one():
    # the two elementary splittings behind the initial weights sit at the
    # start of every split tree; each must be a valid rank-one splitting
    _, tree = build_laminate(2, 3.0, 0.5)
    report = validate_split_tree(tree)
    assert report.ok, report.issues


# ---------------------------------------------------------------------------
# build_laminate
# ---------------------------------------------------------------------------

def test_build_laminate_matches_rational_oracle():
    lam, _ = build_laminate(2, 3.0, 0.5)
    oracle = rational_chain(2)
    by_label = {a.label: a.weight for a in lam.atoms}
    for (kind, i), frac in oracle.items():
        for sign in (1, -1):
            assert math.isclose(by_label[AtomLabel(kind, i, sign)], float(frac),
                                rel_tol=1e-14)


# collision-free parameter for deep laminates: b*(p=3); b*(i-1) never hits an
# integer in float for i <= 2e4 (checked), unlike tidy decimals such as 0.5
B_SAFE = 0.18959104271190655


def test_build_laminate_matches_rational_oracle_deeper():
    lam, _ = build_laminate(4, 3.0, 0.5)
    oracle = rational_chain(4)
    by_label = {a.label: a.weight for a in lam.atoms}
    for (kind, i), frac in oracle.items():
        assert math.isclose(by_label[AtomLabel(kind, i, 1)], float(frac),
                            rel_tol=1e-13)


@pytest.mark.parametrize("N", [2, 10, 100])
def test_build_laminate_invariants(N):
    lam, tree = build_laminate(N, 3.0, B_SAFE)
    assert len(lam.atoms) == 4 * (N - 1) + 2
    assert abs(lam.weight_sum() - 1.0) <= 1e-12
    assert lam.baricenter().frobenius() <= 1e-12
    assert validate_split_tree(tree, lam).ok
    assert len(tree.steps) == 3 + 4 * (N - 1)


def test_build_laminate_rejects_bad_params():
    with pytest.raises(ValueError):
        build_laminate(2, 3.0, 1.0)
    with pytest.raises(ValueError):
        build_laminate(1, 3.0, 0.5)
    with pytest.raises(ValueError):
        build_laminate(2, 0.9, 0.5)


def test_build_laminate_detects_support_collision():
    # with b = 1/2 the matrix B_5 = diag(2, -4) coincides with -C_2
    with pytest.raises(ValueError, match="collide"):
        build_laminate(5, 3.0, 0.5)


def test_cumulative_weights_match_build():
    N = 40
    p, b = 3.0, B_SAFE
    lam, _ = build_laminate(N, p, b)
    abar, bbar, tail = cumulative_weights(N, p, b)
    by_label = {a.label: a.weight for a in lam.atoms}
    for k, i in enumerate(range(2, N + 1)):
        assert math.isclose(by_label[AtomLabel("B", i, 1)], abar[k], rel_tol=1e-12)
        assert math.isclose(by_label[AtomLabel("C", i, 1)], bbar[k], rel_tol=1e-12)
    assert math.isclose(by_label[AtomLabel("A", N, 1)], tail[-1], rel_tol=1e-12)


# ---------------------------------------------------------------------------
# tail weight
# ---------------------------------------------------------------------------

def test_tail_weight_small_case():
    # (1-mu)/2 * gamma_2 = 1/10 * 25/102
    assert math.isclose(tail_weight(2, 3.0, 0.5), 25 / 1020, rel_tol=1e-14)


def test_tail_weight_strictly_decreasing():
    vals = [tail_weight(n, 3.0, 0.5) for n in range(2, 60)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_tail_weight_survives_huge_N():
    lt = log_tail_weight(10 ** 6, 1.5, 27.8)
    assert math.isfinite(lt)


@pytest.mark.parametrize("p,b", [(3.0, 0.18959), (4.0, 0.26795), (1.5, 27.82)])
def test_tail_decay_slope_matches_decay_exponent(p, b):
    ns = np.unique(np.logspace(3, 4, 20).astype(int))
    logs = log_tail_weight(ns, p, b)
    slope = np.polyfit(np.log(ns), logs, 1)[0]
    assert abs(slope + decay_exponent(b, p)) <= 0.05


# ---------------------------------------------------------------------------
# support distance
# ---------------------------------------------------------------------------

def test_min_support_distance_example():
    lam, _ = build_laminate(2, 3.0, 0.5)
    # the closest pair is ±B_2 at distance 2 |B_2|
    assert math.isclose(min_support_distance(lam), 2 * math.hypot(0.5, 0.25),
                        rel_tol=1e-12)


def test_min_support_distance_positive_across_orders():
    dists = [min_support_distance(build_laminate(N, 3.0, B_SAFE)[0])
             for N in (2, 5, 20, 100)]
    assert all(d > 0.0 for d in dists)
    # near-collisions B_i ~ -C_j can dent the minimum but never to zero
    assert min(dists) > 1e-2


# ---------------------------------------------------------------------------
# split tree validation faults
# ---------------------------------------------------------------------------

def _tamper(tree, k, **changes):
    steps = list(tree.steps)
    s = steps[k]
    fields = dict(parent=s.parent, lam=s.lam, child_b=s.child_b,
                  child_c=s.child_c, direction=s.direction)
    fields.update(changes)
    steps[k] = SplitStep(**fields)
    return SplitTree(root=tree.root, steps=tuple(steps))


def test_validate_flags_perturbed_lambda():
    lam, tree = build_laminate(2, 3.0, 0.5)
    bad = _tamper(tree, 1, lam=tree.steps[1].lam + 1e-3)
    report = validate_split_tree(bad)
    assert any("convexity" in msg for msg in report.issues)


def test_validate_flags_rank_two_child():
    lam, tree = build_laminate(2, 3.0, 0.5)
    # step 1 jumps along diag(0, *); bumping m11 of childC makes it rank two
    c = tree.steps[1].child_c
    bad = _tamper(tree, 1, child_c=Mat2(c.m11 + 1e-3, c.m12, c.m21, c.m22))
    report = validate_split_tree(bad)
    assert any("rank-one" in msg for msg in report.issues)


def test_validate_checks_replay_against_laminate():
    lam, tree = build_laminate(3, 3.0, 0.5)
    assert validate_split_tree(tree, lam).ok
    shorter = SplitTree(root=tree.root, steps=tree.steps[:-1])
    report = validate_split_tree(shorter, lam)
    assert not report.ok


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_laminate_roundtrip_bitwise(tmp_path):
    lam, tree = build_laminate(4, 3.0, 0.5)
    doc = laminate_to_dict(lam, tree)
    import json
    text = json.dumps(doc)
    lam2, tree2 = laminate_from_dict(json.loads(text))
    assert lam2.atoms == lam.atoms
    assert tree2.steps == tree.steps
    assert validate_split_tree(tree2, lam2).ok
