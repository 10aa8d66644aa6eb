"""Laminates of finite order supported on the diagonal matrix families.

The construction iterates two elementary splittings per index i:

    A_i   -> alpha_{i+1} B_{i+1}  +  (1 - alpha_{i+1}) E_i
    E_i   -> beta'_{i+1} C_{i+1}  +  (1 - beta'_{i+1}) A_{i+1}

where A_i = diag(b i, i^{p-1}), B_i = diag(b(i-1), -(b(i-1))^{p-1}),
C_i = diag(-i, i^{p-1}) and E_i = diag(b i, (i+1)^{p-1}) is the intermediate
matrix of the chain.  Every jump is diagonal, so all rank-one directions are
axis aligned.

The seed is the two-step split of the zero matrix

    0   -> 1/2 D + 1/2 (-D),        D = diag(b, 0)
    ±D  -> mu (±B_2) + (1 - mu)(±A_1),    mu = 1/(1 + b^{p-1})

mu is forced: it is the unique weight making ±D = mu(±B_2) + (1-mu)(±A_1) a
convex combination along the rank-one segment, and no splitting tree can
reach equal quarters on {±B_2, ±A_1} because elementary splittings preserve
the integral of det (a null Lagrangian) while quarters would give
(b - b^p)/2 != 0 for b != 1.

All weights are exact replays of the recorded split tree, so validating the
tree against the laminate is a bitwise check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .mat2 import Mat2, Vec2, frobenius_distance, outer, rank_one_connection, signed_pow

WEIGHT_TOL = 1e-12          # arithmetic: weight sums, baricenter
STRUCT_TOL = 1e-10          # structural: convexity / rank-one identities


class AtomLabel(NamedTuple):
    kind: str       # 'A', 'B' or 'C'
    index: int
    sign: int       # +1 or -1

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"{s}{self.kind}{self.index}"


@dataclass(frozen=True)
class Atom:
    weight: float
    matrix: Mat2
    label: AtomLabel


@dataclass(frozen=True)
class Laminate:
    atoms: Tuple[Atom, ...]
    p: float
    b: float
    order: int

    def weights(self) -> List[float]:
        return [a.weight for a in self.atoms]

    def weight_sum(self) -> float:
        return math.fsum(a.weight for a in self.atoms)

    def baricenter(self) -> Mat2:
        m = Mat2.zero()
        for a in self.atoms:
            m = m.add(a.matrix.scale(a.weight))
        return m

    def support(self) -> List[Mat2]:
        return [a.matrix for a in self.atoms]


@dataclass(frozen=True)
class SplitStep:
    parent: Mat2
    lam: float
    child_b: Mat2
    child_c: Mat2
    direction: Tuple[Vec2, Vec2]    # (a, n) with child_b - child_c = a (x) n


@dataclass(frozen=True)
class SplitTree:
    root: Mat2
    steps: Tuple[SplitStep, ...]

    def replay(self) -> Dict[Mat2, float]:
        """Apply all steps to delta_root; returns the final weight table."""
        weights: Dict[Mat2, float] = {self.root: 1.0}
        for k, step in enumerate(self.steps):
            if step.parent not in weights:
                raise ValueError(f"step {k}: parent matrix not in current support")
            w = weights.pop(step.parent)
            weights[step.child_b] = weights.get(step.child_b, 0.0) + w * step.lam
            weights[step.child_c] = weights.get(step.child_c, 0.0) + w * (1.0 - step.lam)
        return weights


@dataclass
class TreeValidation:
    issues: List[str]

    @property
    def ok(self) -> bool:
        return not self.issues


# ---------------------------------------------------------------------------
# matrix families
# ---------------------------------------------------------------------------

def _check_params(p: float, b: float) -> None:
    if p <= 1.0:
        raise ValueError(f"p must exceed 1, got p={p}")
    if b <= 0.0 or b == 1.0:
        raise ValueError(f"b must be positive and different from 1, got b={b}")


def matrix_family(label: AtomLabel, p: float, b: float) -> Mat2:
    """Support matrix for a label; sign -1 returns the negated matrix.

    The (2,2) entries are built through signed_pow on the same scalar as the
    first row, so the flux residual cancels bitwise on B and C matrices.
    """
    _check_params(p, b)
    kind, i, sign = label.kind, label.index, label.sign
    q = p - 1.0
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if kind == "A":
        if i < 0:
            raise ValueError(f"A requires index >= 0, got {i}")
        m = Mat2.diag(b * i, signed_pow(float(i), q))
    elif kind == "B":
        if i < 1:
            raise ValueError(f"B requires index >= 1, got {i}")
        x = b * (i - 1)
        m = Mat2.diag(x, -signed_pow(x, q))
    elif kind == "C":
        if i < 1:
            raise ValueError(f"C requires index >= 1, got {i}")
        m = Mat2.diag(-float(i), signed_pow(float(i), q))
    else:
        raise ValueError(f"unknown matrix kind {kind!r}")
    return m if sign > 0 else m.neg()


def intermediate_matrix(i: int, p: float, b: float) -> Mat2:
    """E_i = diag(b i, (i+1)^{p-1}), the midpoint of the two-step split of A_i."""
    _check_params(p, b)
    if i < 1:
        raise ValueError(f"intermediate matrix requires i >= 1, got {i}")
    return Mat2.diag(b * i, signed_pow(float(i + 1), p - 1.0))


# ---------------------------------------------------------------------------
# splitting coefficients
# ---------------------------------------------------------------------------

def split_coefficients(i, p: float, b: float):
    """(alpha, beta, gamma) splitting A_i into {B_{i+1}, C_{i+1}, A_{i+1}}.

    alpha_{i+1} = ((1+1/i)^{p-1} - 1) / ((1+1/i)^{p-1} + b^{p-1})
    beta_{i+1}  = (1 - alpha_{i+1}) * b / ((b+1)(i+1))
    gamma       = 1 - alpha - beta

    Accepts a scalar index or a numpy array of indices (all >= 1).
    """
    _check_params(p, b)
    arr = np.asarray(i, dtype=float)
    if np.any(arr < 1):
        raise ValueError("splitting index must be >= 1 (the root splits via initial_split)")
    q = p - 1.0
    t = q * np.log1p(1.0 / arr)
    grow = np.exp(t)                 # (1+1/i)^{p-1}
    bq = b ** q
    alpha = np.expm1(t) / (grow + bq)
    beta = (1.0 - alpha) * (b / ((b + 1.0) * (arr + 1.0)))
    gamma = 1.0 - alpha - beta
    if np.isscalar(i) or np.ndim(i) == 0:
        return float(alpha), float(beta), float(gamma)
    return alpha, beta, gamma


def log_gamma_factors(i, p: float, b: float):
    """log gamma_{i+1} evaluated stably (elementwise over i >= 1)."""
    arr = np.asarray(i, dtype=float)
    q = p - 1.0
    t = q * np.log1p(1.0 / arr)
    bq = b ** q
    # gamma = (1+b^q)/((1+1/i)^q + b^q) * (1 - b/((b+1)(i+1)))
    first = np.log1p(-np.expm1(t) / (np.exp(t) + bq))
    second = np.log1p(-b / ((b + 1.0) * (arr + 1.0)))
    return first + second


def initial_weight(p: float, b: float) -> float:
    """Weight landing on each of ±A_1 after the two-step initial split."""
    mu = 1.0 / (1.0 + b ** (p - 1.0))
    return 0.5 * (1.0 - mu)


def initial_split(p: float, b: float) -> List[Tuple[float, AtomLabel]]:
    """Weights and labels produced by splitting delta_0 down to {±B_2, ±A_1}.

    Two elementary splittings: 0 = 1/2 D + 1/2 (-D) with D = diag(b, 0),
    then ±D = mu (±B_2) + (1-mu) (±A_1) with mu = 1/(1+b^{p-1}).
    """
    _check_params(p, b)
    mu = 1.0 / (1.0 + b ** (p - 1.0))
    wb = 0.5 * mu
    wa = 0.5 * (1.0 - mu)
    return [
        (wb, AtomLabel("B", 2, 1)),
        (wb, AtomLabel("B", 2, -1)),
        (wa, AtomLabel("A", 1, 1)),
        (wa, AtomLabel("A", 1, -1)),
    ]


# ---------------------------------------------------------------------------
# laminate construction
# ---------------------------------------------------------------------------

def _direction(child_b: Mat2, child_c: Mat2) -> Tuple[Vec2, Vec2]:
    conn = rank_one_connection(child_b, child_c)
    if conn is None:
        raise ValueError("split children are not rank-one connected")
    return conn


def build_laminate(N: int, p: float, b: float) -> Tuple[Laminate, SplitTree]:
    """Construct the order-N laminate with baricenter 0 and its split tree.

    The tree records every elementary splitting; the laminate weights are the
    exact replay of the tree, so tree validation reproduces them bitwise.
    """
    _check_params(p, b)
    if N < 2:
        raise ValueError(f"laminate order must be at least 2, got N={N}")

    q = p - 1.0
    mu = 1.0 / (1.0 + b ** q)
    D = Mat2.diag(b, 0.0)

    def mat(kind: str, i: int, sign: int) -> Mat2:
        return matrix_family(AtomLabel(kind, i, sign), p, b)

    steps: List[SplitStep] = []

    def push(parent: Mat2, lam: float, child_b: Mat2, child_c: Mat2) -> None:
        steps.append(SplitStep(parent, lam, child_b, child_c,
                               _direction(child_b, child_c)))

    push(Mat2.zero(), 0.5, D, D.neg())
    push(D, mu, mat("B", 2, 1), mat("A", 1, 1))
    push(D.neg(), mu, mat("B", 2, -1), mat("A", 1, -1))

    idx = np.arange(1, N)
    alphas, betas, _ = split_coefficients(idx, p, b)
    for k, i in enumerate(range(1, N)):
        alpha = float(alphas[k])
        beta = float(betas[k])
        beta_prime = beta / (1.0 - alpha)
        for sign in (1, -1):
            e_i = intermediate_matrix(i, p, b)
            e_i = e_i if sign > 0 else e_i.neg()
            push(mat("A", i, sign), alpha, mat("B", i + 1, sign), e_i)
            push(e_i, beta_prime, mat("C", i + 1, sign), mat("A", i + 1, sign))

    tree = SplitTree(root=Mat2.zero(), steps=tuple(steps))
    table = tree.replay()

    # label the final support and order atoms deterministically in ± pairs
    labels: List[AtomLabel] = []
    for i in range(2, N + 1):
        labels += [AtomLabel("B", i, 1), AtomLabel("B", i, -1),
                   AtomLabel("C", i, 1), AtomLabel("C", i, -1)]
    labels += [AtomLabel("A", N, 1), AtomLabel("A", N, -1)]

    seen: Dict[Mat2, AtomLabel] = {}
    for lab in labels:
        m = matrix_family(lab, p, b)
        if m in seen:
            # happens when b(i-1) hits an integer index j: then B_i == -C_j
            raise ValueError(
                f"support matrices collide at order {N}: {lab} equals {seen[m]} "
                f"(b*(i-1) lands on an integer index); choose b off this lattice"
            )
        seen[m] = lab

    atoms: List[Atom] = []
    for lab in labels:
        m = matrix_family(lab, p, b)
        if m not in table:
            raise AssertionError(f"expected support matrix missing for {lab}")
        atoms.append(Atom(weight=table.pop(m), matrix=m, label=lab))
    if table:
        raise AssertionError(f"unexpected support matrices after replay: {len(table)}")

    lam = Laminate(atoms=tuple(atoms), p=p, b=b, order=N)
    _assert_laminate_invariants(lam)
    return lam, tree


def _assert_laminate_invariants(lam: Laminate) -> None:
    n_expected = 4 * (lam.order - 1) + 2
    if len(lam.atoms) != n_expected:
        raise AssertionError(f"atom count {len(lam.atoms)} != {n_expected}")
    if abs(lam.weight_sum() - 1.0) > WEIGHT_TOL:
        raise AssertionError(f"weights sum to {lam.weight_sum()!r}")
    if lam.baricenter().frobenius() > WEIGHT_TOL:
        raise AssertionError("baricenter is not zero")
    for a in lam.atoms:
        if not (a.weight > 0.0):
            raise AssertionError(f"non-positive weight on {a.label}")
        if not a.matrix.is_finite():
            raise AssertionError(f"non-finite matrix on {a.label}")
    if len(set(a.label for a in lam.atoms)) != n_expected:
        raise AssertionError("atom labels are not pairwise distinct")
    if len(set(a.matrix for a in lam.atoms)) != n_expected:
        raise AssertionError("support matrices are not pairwise distinct")


def cumulative_weights(N: int, p: float, b: float):
    """Closed-form cumulative weights (abar, bbar, tail) for i = 2..N.

    Returns (abar[i], bbar[i], tail[i]) as arrays indexed by i-2, where
    abar/bbar are the ±B_i / ±C_i weights and tail[i] is the ±A_i weight
    after step i.  Seeded by the valid initial split: tail_1 = (1-mu)/2 and
    abar_2 additionally collects the direct mu/2 quarter of the seed.
    """
    _check_params(p, b)
    if N < 2:
        raise ValueError("N >= 2 required")
    mu = 1.0 / (1.0 + b ** (p - 1.0))
    idx = np.arange(1, N)
    alpha, beta, gamma = split_coefficients(idx, p, b)
    alpha = np.atleast_1d(alpha)
    beta = np.atleast_1d(beta)
    gamma = np.atleast_1d(gamma)
    tail_prev = np.empty(N - 1)          # tail before splitting A_i, i = 1..N-1
    tail_prev[0] = 0.5 * (1.0 - mu)
    if N > 2:
        tail_prev[1:] = tail_prev[0] * np.cumprod(gamma[:-1])
    abar = tail_prev * alpha
    bbar = tail_prev * beta
    tail = tail_prev * gamma
    abar[0] += 0.5 * mu                  # seed quarter lands directly on ±B_2
    return abar, bbar, tail


def tail_weight(N: int, p: float, b: float) -> float:
    """Cumulative weight on each of ±A_N, computed in log space.

    tail(N) = (1-mu)/2 * prod_{i=2..N} gamma_i; strictly decreasing in N and
    decaying like N^{-q} with q = decay_exponent(b, p).
    """
    return math.exp(log_tail_weight(N, p, b))


def log_tail_weight(N, p: float, b: float):
    """log tail weight; N may be a scalar or an array (max over N evaluated once)."""
    _check_params(p, b)
    ns = np.atleast_1d(np.asarray(N, dtype=int))
    if np.any(ns < 2):
        raise ValueError("N >= 2 required")
    n_max = int(ns.max())
    mu = 1.0 / (1.0 + b ** (p - 1.0))
    logs = log_gamma_factors(np.arange(1, n_max), p, b)
    cum = np.concatenate(([0.0], np.cumsum(logs)))   # cum[k] = sum of first k factors
    out = math.log(0.5 * (1.0 - mu)) + cum[ns - 1]
    if np.isscalar(N) or np.ndim(N) == 0:
        return float(out[0])
    return out


def min_support_distance(lam: Laminate) -> float:
    """Minimum Frobenius distance over distinct pairs of support matrices."""
    mats = np.array([list(a.matrix) for a in lam.atoms])
    best = math.inf
    chunk = 512
    for s in range(0, len(mats), chunk):
        block = mats[s:s + chunk]
        diff = block[:, None, :] - mats[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        ii, jj = np.indices(dist.shape)
        mask = (ii + s) != jj
        best = min(best, float(dist[mask].min()))
    return best


# ---------------------------------------------------------------------------
# split tree validation
# ---------------------------------------------------------------------------

def validate_split_tree(tree: SplitTree, laminate: Optional[Laminate] = None) -> TreeValidation:
    """Check every step's convexity and rank-one structure, then the replay.

    Violations are reported with their step index rather than raised.
    """
    issues: List[str] = []
    for k, step in enumerate(tree.steps):
        scale = max(1.0, step.child_b.frobenius(), step.child_c.frobenius())
        if not (0.0 <= step.lam <= 1.0):
            issues.append(f"step {k}: lambda {step.lam} outside [0,1]")
        combo = step.child_b.scale(step.lam).add(step.child_c.scale(1.0 - step.lam))
        defect = frobenius_distance(combo, step.parent)
        if defect > STRUCT_TOL * scale:
            issues.append(f"step {k}: convexity defect {defect:.3e}")
        conn = rank_one_connection(step.child_b, step.child_c)
        if conn is None:
            issues.append(f"step {k}: children not rank-one connected")
        else:
            a, n = step.direction
            recon = outer(a, n)
            err = frobenius_distance(recon, step.child_b.sub(step.child_c))
            if err > STRUCT_TOL * scale:
                issues.append(f"step {k}: stored direction off by {err:.3e}")
    if laminate is not None:
        try:
            table = tree.replay()
        except ValueError as exc:
            issues.append(f"replay failed: {exc}")
            return TreeValidation(issues)
        for atom in laminate.atoms:
            got = table.get(atom.matrix)
            if got is None:
                issues.append(f"replay missing atom {atom.label}")
            elif abs(got - atom.weight) > 1e-15:
                issues.append(f"replay weight mismatch on {atom.label}: "
                              f"{got!r} vs {atom.weight!r}")
        if len(table) != len(laminate.atoms):
            issues.append(f"replay support size {len(table)} != {len(laminate.atoms)}")
    return TreeValidation(issues)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def laminate_to_dict(lam: Laminate, tree: Optional[SplitTree] = None) -> dict:
    doc = {
        "p": lam.p,
        "b": lam.b,
        "N": lam.order,
        "atoms": [
            {
                "kind": a.label.kind,
                "index": a.label.index,
                "sign": "+" if a.label.sign > 0 else "-",
                "weight": a.weight,
                "matrix": list(a.matrix),
            }
            for a in lam.atoms
        ],
    }
    if tree is not None:
        doc["steps"] = [
            {
                "parent": list(s.parent),
                "lambda": s.lam,
                "childB": list(s.child_b),
                "childC": list(s.child_c),
                "a": list(s.direction[0]),
                "n": list(s.direction[1]),
            }
            for s in tree.steps
        ]
    return doc


def laminate_from_dict(doc: dict) -> Tuple[Laminate, Optional[SplitTree]]:
    atoms = tuple(
        Atom(
            weight=float(rec["weight"]),
            matrix=Mat2(*map(float, rec["matrix"])),
            label=AtomLabel(rec["kind"], int(rec["index"]),
                            1 if rec["sign"] == "+" else -1),
        )
        for rec in doc["atoms"]
    )
    lam = Laminate(atoms=atoms, p=float(doc["p"]), b=float(doc["b"]),
                   order=int(doc["N"]))
    tree = None
    if "steps" in doc:
        steps = tuple(
            SplitStep(
                parent=Mat2(*map(float, rec["parent"])),
                lam=float(rec["lambda"]),
                child_b=Mat2(*map(float, rec["childB"])),
                child_c=Mat2(*map(float, rec["childC"])),
                direction=(tuple(map(float, rec["a"])), tuple(map(float, rec["n"]))),
            )
            for rec in doc["steps"]
        )
        tree = SplitTree(root=Mat2.zero(), steps=steps)
    return lam, tree


def save_laminate(path, lam: Laminate, tree: Optional[SplitTree] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(laminate_to_dict(lam, tree), fh, indent=1)
        fh.write("\n")


def load_laminate(path) -> Tuple[Laminate, Optional[SplitTree]]:
    with open(path, "r", encoding="utf-8") as fh:
        return laminate_from_dict(json.load(fh))
