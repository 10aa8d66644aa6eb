"""Piecewise-affine realization of a split tree on a convex polygon.

Each elementary splitting ``parent = lam * B + (1-lam) * C`` with
``B - C = a (x) n`` is realized inside every cell currently carrying the
parent gradient by the classic stripe construction: writing

    w(x) = parent x + offset + a * psi(x),
    psi(x) = min( s(n . x),  rho * dist(x, boundary of the cell) )

where s is the sawtooth with slopes (1-lam) on a ``lam`` fraction and -lam
on the rest of each period.  On the sawtooth region the gradient is exactly
B or C; where the boundary-distance term wins the gradient is a transition
value and the perturbation dies out linearly, restoring the parent's affine
boundary data on the whole cell boundary (so the global map stays
continuous and w = 0 on the domain boundary).  Since psi is a minimum of
finitely many affine functions, the pieces are convex polygons obtained by
halfplane clipping and the map is affine on each piece - no quadrature,
no approximation.

The sawtooth amplitude is lam(1-lam)h per period of length h, so the
transition frame occupies about lam(1-lam) * span / (rho * m * width) of the
cell when split into m periods.  Band counts are chosen per cell by a
planner that simulates the whole cascade for a small family of budget
allocations and picks the cheapest one meeting the global transition target
(roughly 1.28/stripes, so refinement in `stripes` shrinks the transition
share proportionally).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geometry import (
    Point,
    Polygon,
    clip_halfplane,
    convexity_defect,
    dedupe_vertices,
    inward_edge_offsets,
    polygon_area,
    polygon_diameter,
    polygon_edges,
    span_along,
    unit_square,
)
from .laminate import AtomLabel, Laminate, SplitStep, SplitTree
from .mat2 import Mat2, Vec2, outer

RHO = 2.0                      # frame slope factor; keeps Lipschitz <= |P| + 2|B-C|
TRANSITION_BASE = 0.64         # global transition target is 2*TRANSITION_BASE/stripes
PLAN_SAFETY = 0.93             # planner must land below this fraction of eta
DEFAULT_MAX_CELLS = 1_500_000


class BudgetError(ValueError):
    """Raised when (eta, stripes, max_cells) cannot all be honored."""

    def __init__(self, message: str, achievable_eta: Optional[float] = None,
                 minimal_stripes: Optional[int] = None,
                 projected_cells: Optional[int] = None):
        super().__init__(message)
        self.achievable_eta = achievable_eta
        self.minimal_stripes = minimal_stripes
        self.projected_cells = projected_cells


@dataclass(slots=True)
class AffineCell:
    region: Polygon
    gradient: Mat2
    offset: Vec2
    tag: object = None          # AtomLabel, "transition", or None while interim

    def area(self) -> float:
        return polygon_area(self.region)

    def value(self, x: float, y: float) -> Vec2:
        vx, vy = self.gradient.apply(x, y)
        return (vx + self.offset[0], vy + self.offset[1])


@dataclass
class PWAffineMap:
    domain: Polygon
    cells: List[AffineCell]
    delta: float
    eta: float
    lipschitz_bound: float
    meta: dict = field(default_factory=dict)

    def domain_area(self) -> float:
        return polygon_area(self.domain)

    def transition_fraction(self) -> float:
        total = math.fsum(c.area() for c in self.cells if c.tag == "transition")
        return total / self.domain_area()


@dataclass
class MapValidation:
    issues: List[str]
    max_continuity_defect: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass
class Histogram:
    fractions: Dict[AtomLabel, float]
    transition: float

    def total(self) -> float:
        return math.fsum(self.fractions.values()) + self.transition


# ---------------------------------------------------------------------------
# single-cell patch
# ---------------------------------------------------------------------------

def _frame_pressure(cell_region: Polygon, lam: float, n: Vec2) -> Tuple[float, float, float]:
    """(c_frame, span, area): estimated frame fraction is c_frame / m."""
    area = polygon_area(cell_region)
    t0, t1 = span_along(cell_region, n[0], n[1])
    span = t1 - t0
    # edges not lying in lines {n.x = const} feed the frame
    l_sides = 0.0
    for (x0, y0), (x1, y1) in polygon_edges(cell_region):
        ex, ey = x1 - x0, y1 - y0
        if abs(ex * n[0] + ey * n[1]) > 1e-12 * math.hypot(ex, ey):
            l_sides += math.hypot(ex, ey)
    c_frame = lam * (1.0 - lam) * span * l_sides / (2.0 * RHO * max(area, 1e-300))
    return c_frame, span, area


def simple_laminate_patch(cell: AffineCell, step: SplitStep, stripes: int,
                          eta_local: float) -> List[AffineCell]:
    """Split one cell along a recorded elementary splitting.

    `stripes` is the number of alternating bands (two per sawtooth period);
    if it is too small for the transition frame to fit within `eta_local`
    of the cell area, a BudgetError reports the minimal stripe count.
    """
    if stripes < 2:
        raise ValueError("at least two stripes are required")
    par = step.parent
    g = cell.gradient
    scale = max(1.0, par.frobenius())
    defect = g.sub(par).frobenius()
    if defect > 1e-10 * scale:
        raise ValueError(f"cell gradient differs from step parent by {defect:.3e}")

    a, n = step.direction
    lam = step.lam
    c_frame, span, area = _frame_pressure(cell.region, lam, n)
    m = (stripes + 1) // 2
    if span <= 0.0 or area <= 0.0:
        return [cell]
    est_fraction = c_frame / m
    if est_fraction > eta_local:
        need = 2 * max(1, math.ceil(c_frame / eta_local))
        raise BudgetError(
            f"{stripes} stripes leave a transition fraction ~{est_fraction:.3g} "
            f"> eta_local={eta_local:.3g}; need at least {need} stripes",
            minimal_stripes=need,
        )

    t0, t1 = span_along(cell.region, n[0], n[1])
    h = (t1 - t0) / m
    peak = lam * (1.0 - lam) * h
    up_slope = 1.0 - lam
    down_slope = -lam

    # frame candidates: rho * d_e as affine forms (gx, gy, c)
    frame_forms = [(RHO * nx, RHO * ny, RHO * c)
                   for nx, ny, c in inward_edge_offsets(cell.region)]
    ox, oy = cell.offset
    ax, ay = a
    drop_tol = 1e-17 * max(area, 1.0)
    dedupe_tol = 1e-14 * max(polygon_diameter(cell.region), 1e-300)

    out: List[AffineCell] = []

    def emit(region: Polygon, gradient: Mat2, form_c: float, tag) -> None:
        region = dedupe_vertices(region, dedupe_tol)
        if len(region) < 3 or abs(polygon_area(region)) <= drop_tol:
            return
        out.append(AffineCell(
            region=region,
            gradient=gradient,
            offset=(ox + ax * form_c, oy + ay * form_c),
            tag=tag,
        ))

    for j in range(m):
        lo = t0 + j * h
        mid = lo + lam * h
        hi = t0 + (j + 1) * h if j + 1 < m else t1
        for (ta, tb, s_a, slope, child) in (
            (lo, mid, 0.0, up_slope, step.child_b),
            (mid, hi, peak, down_slope, step.child_c),
        ):
            band = clip_halfplane(cell.region, n[0], n[1], -ta)
            band = clip_halfplane(band, -n[0], -n[1], tb)
            if len(band) < 3:
                continue
            band_form = (slope * n[0], slope * n[1], s_a - slope * ta)
            # keep only frame candidates that can win somewhere on the band
            cands = [(band_form, child, None)]
            bf = [band_form[0] * x + band_form[1] * y + band_form[2] for x, y in band]
            for form in frame_forms:
                fv = [form[0] * x + form[1] * y + form[2] for x, y in band]
                if any(f < b for f, b in zip(fv, bf)):
                    cands.append((form, None, "transition"))
            if len(cands) == 1:
                emit(band, child, band_form[2], None)
                continue
            for k, (form_k, child_k, tag_k) in enumerate(cands):
                piece = band
                for l, (form_l, _, _) in enumerate(cands):
                    if l == k or len(piece) < 3:
                        continue
                    piece = clip_halfplane(
                        piece,
                        form_l[0] - form_k[0],
                        form_l[1] - form_k[1],
                        form_l[2] - form_k[2],
                    )
                if len(piece) < 3:
                    continue
                if child_k is not None:
                    emit(piece, child_k, form_k[2], None)
                else:
                    gradient = g.add(outer(a, (form_k[0], form_k[1])))
                    emit(piece, gradient, form_k[2], "transition")
    return out


# ---------------------------------------------------------------------------
# cascade planning
# ---------------------------------------------------------------------------

def _step_axis(step: SplitStep) -> int:
    """0 if the splitting direction is e1, 1 if e2 (trees here are axis aligned)."""
    _, n = step.direction
    return 0 if abs(n[0]) >= abs(n[1]) else 1


def _step_parent_weights(tree: SplitTree) -> List[float]:
    weights: Dict[Mat2, float] = {tree.root: 1.0}
    out = []
    for step in tree.steps:
        w = weights.pop(step.parent)
        out.append(w)
        weights[step.child_b] = weights.get(step.child_b, 0.0) + w * step.lam
        weights[step.child_c] = weights.get(step.child_c, 0.0) + w * (1.0 - step.lam)
    return out


def _simulate(tree: SplitTree, s_weights: Sequence[float], fractions: Sequence[float],
              domain_dims: Tuple[float, float]):
    """Closed-form cascade: per-step band counts, projected cells and transition.

    Tracks one representative cell (count, wx, wy) per live gradient; exact
    for rectangular domains and a good estimate otherwise.
    """
    reps: Dict[Mat2, Tuple[float, float, float]] = {
        tree.root: (1.0, domain_dims[0], domain_dims[1])
    }
    total_cells = 0.0
    total_transition = 0.0
    for k, step in enumerate(tree.steps):
        count, wx, wy = reps.pop(step.parent)
        axis = _step_axis(step)
        span = wx if axis == 0 else wy
        perp = wy if axis == 0 else wx
        lam = step.lam
        ll = lam * (1.0 - lam)
        pressure = ll * span / (RHO * max(perp, 1e-300))
        m = max(1, math.ceil(pressure / max(fractions[k], 1e-9)))
        total_transition += s_weights[k] * min(1.0, pressure / m)
        total_cells += count * (2 * m * 2.2 + 4)
        h = span / m
        if axis == 0:
            b_dims = (lam * h, wy)
            c_dims = ((1.0 - lam) * h, wy)
        else:
            b_dims = (wx, lam * h)
            c_dims = (wx, (1.0 - lam) * h)
        for child, dims in ((step.child_b, b_dims), (step.child_c, c_dims)):
            prev = reps.get(child)
            add = (count * m, dims[0], dims[1])
            if prev is None:
                reps[child] = add
            else:
                # merge populations (rare: only terminal atoms collect twice)
                tot = prev[0] + add[0]
                reps[child] = (tot,
                               (prev[0] * prev[1] + add[0] * add[1]) / tot,
                               (prev[0] * prev[2] + add[0] * add[2]) / tot)
    return total_cells, total_transition


def _plan_fractions(tree: SplitTree, eta: float, stripes: int,
                    domain_dims: Tuple[float, float],
                    max_cells: int) -> Tuple[List[float], float, float]:
    """Choose per-step transition-fraction targets.

    The global transition target T = 2*TRANSITION_BASE/stripes is split into
    per-step absolute budgets B_k (f_k = B_k / S_k).  Because downstream band
    counts compound through cell aspect ratios, the split is optimized by
    deterministic coordinate descent on the simulated cascade, seeded with a
    few simple allocations.
    """
    s_weights = _step_parent_weights(tree)
    lls = [s.lam * (1.0 - s.lam) for s in tree.steps]
    target = 2.0 * TRANSITION_BASE / stripes
    K = len(tree.steps)

    if target > PLAN_SAFETY * eta:
        raise BudgetError(
            f"transition target {target:.4g} for stripes={stripes} exceeds "
            f"eta={eta}; achievable eta ~ {target / PLAN_SAFETY:.4g} "
            f"(increase stripes or relax eta)",
            achievable_eta=target / PLAN_SAFETY,
        )

    def run(budgets: Sequence[float]):
        z = sum(budgets)
        fractions = [target * bk / (z * max(sk, 1e-12))
                     for bk, sk in zip(budgets, s_weights)]
        cells, trans = _simulate(tree, s_weights, fractions, domain_dims)
        return fractions, cells, trans

    seeds = [
        [1.0] * K,
        [max(sk, 1e-12) for sk in s_weights],
        [max(sk, 1e-12) * ll for sk, ll in zip(s_weights, lls)],
    ]
    best = None
    for seed in seeds:
        budgets = list(seed)
        fractions, cells, trans = run(budgets)
        for _ in range(8):
            improved = False
            for k in range(K):
                for factor in (0.4, 0.7, 1.5, 2.5):
                    trial = list(budgets)
                    trial[k] *= factor
                    f2, c2, t2 = run(trial)
                    if c2 < cells - 0.5:
                        budgets, fractions, cells, trans = trial, f2, c2, t2
                        improved = True
            if not improved:
                break
        key = (trans > PLAN_SAFETY * eta or cells > max_cells, cells, trans)
        if best is None or key < (best[0], best[1], best[2]):
            best = (key[0], cells, trans, fractions)
    infeasible, cells, trans, fractions = best
    if infeasible:
        raise BudgetError(
            f"no band allocation meets eta={eta} within {max_cells} cells "
            f"(best projection: transition {trans:.4g}, {cells:.3g} cells); "
            f"achievable eta ~ {trans / PLAN_SAFETY:.4g}",
            achievable_eta=trans / PLAN_SAFETY,
            projected_cells=int(cells),
        )
    return fractions, cells, trans


# ---------------------------------------------------------------------------
# full realization
# ---------------------------------------------------------------------------

def realize_laminate(domain: Polygon, tree: SplitTree, delta: float, eta: float,
                     stripes: int, laminate: Optional[Laminate] = None,
                     max_cells: int = DEFAULT_MAX_CELLS) -> PWAffineMap:
    """Realize a split tree as a conforming piecewise-affine map on `domain`.

    Applies the stripe patch to every cell whose gradient matches the step
    parent, in tree order.  The returned map is exactly continuous across
    cells, vanishes on the domain boundary, carries atom gradients outside a
    transition set of measure <= eta, and its per-atom area fractions match
    the laminate weights within eta.
    """
    if not (0.0 < eta < 0.5):
        raise ValueError(f"eta must lie in (0, 0.5), got {eta}")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if laminate is not None:
        from .laminate import min_support_distance
        dmin = min_support_distance(laminate)
        if not (delta < 0.5 * dmin):
            raise ValueError(
                f"delta={delta} must be below half the minimal support "
                f"distance {dmin:.6g}")

    xs = [v[0] for v in domain]
    ys = [v[1] for v in domain]
    dims = (max(xs) - min(xs), max(ys) - min(ys))
    fractions, projected_cells, projected_transition = _plan_fractions(
        tree, eta, stripes, dims, max_cells)

    cells: List[AffineCell] = [AffineCell(region=tuple(domain),
                                          gradient=tree.root,
                                          offset=(0.0, 0.0))]
    lipschitz = 0.0
    for k, step in enumerate(tree.steps):
        a, _ = step.direction
        lipschitz = max(lipschitz,
                        step.parent.frobenius() + RHO * math.hypot(a[0], a[1]))
        next_cells: List[AffineCell] = []
        f_k = fractions[k]
        for cell in cells:
            if cell.tag == "transition" or cell.gradient != step.parent:
                next_cells.append(cell)
                continue
            c_frame, span, area = _frame_pressure(cell.region, step.lam,
                                                  step.direction[1])
            m = max(1, math.ceil(c_frame / max(f_k, 1e-12)))
            next_cells.extend(
                simple_laminate_patch(cell, step, 2 * m, f_k * 1.0001 + 1e-12))
            if len(next_cells) > max_cells:
                raise BudgetError(
                    f"cell budget {max_cells} exhausted at step {k}",
                    projected_cells=len(next_cells))
        cells = next_cells

    # tag atom cells by exact gradient match when the laminate is known
    if laminate is not None:
        by_matrix = {atom.matrix: atom.label for atom in laminate.atoms}
        for cell in cells:
            if cell.tag is None:
                cell.tag = by_matrix.get(cell.gradient)
                if cell.tag is None:
                    raise AssertionError(
                        "realized cell gradient is not in the laminate support")

    mp = PWAffineMap(
        domain=tuple(domain),
        cells=cells,
        delta=delta,
        eta=eta,
        lipschitz_bound=lipschitz,
        meta={
            "stripes": stripes,
            "projected_cells": int(projected_cells),
            "projected_transition": projected_transition,
        },
    )
    measured = mp.transition_fraction()
    mp.meta["transition_fraction"] = measured
    if measured > eta:
        raise BudgetError(
            f"realized transition fraction {measured:.4g} exceeds eta={eta}; "
            f"achievable eta ~ {measured * 1.1:.4g}",
            achievable_eta=measured * 1.1)
    return mp


# ---------------------------------------------------------------------------
# histogram
# ---------------------------------------------------------------------------

def gradient_histogram(mp: PWAffineMap, laminate: Laminate, delta: float) -> Histogram:
    """Per-atom area fractions; cells farther than delta from every atom are
    transition mass.  Fractions plus transition sum to 1 within 1e-12."""
    area_total = mp.domain_area()
    sums: Dict[AtomLabel, List[float]] = {a.label: [] for a in laminate.atoms}
    trans: List[float] = []
    exact = {a.matrix: a.label for a in laminate.atoms}
    atoms = list(laminate.atoms)
    for cell in mp.cells:
        area = cell.area()
        label = exact.get(cell.gradient)
        if label is None:
            best = None
            best_d = delta
            for atom in atoms:
                d = cell.gradient.sub(atom.matrix).frobenius()
                if d < best_d:
                    best, best_d = atom.label, d
            label = best
        if label is None:
            trans.append(area)
        else:
            sums[label].append(area)
    fractions = {lab: math.fsum(vals) / area_total for lab, vals in sums.items()}
    hist = Histogram(fractions=fractions,
                     transition=math.fsum(trans) / area_total)
    if abs(hist.total() - 1.0) > 1e-12:
        raise AssertionError(f"histogram fractions sum to {hist.total()!r}")
    return hist


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _edge_records(mp: PWAffineMap):
    """Group directed cell edges by the (undirected) line they lie on.

    Returns {line key: [(t0, t1, side, cell index), ...]} with t the
    coordinate along the line and side +-1 telling which halfplane the cell
    interior occupies.
    """
    diam = polygon_diameter(mp.domain)
    quant = 1e-9 * max(diam, 1.0)
    buckets: Dict[Tuple[int, int, int],
                  List[Tuple[float, float, int, int, float]]] = {}
    for idx, cell in enumerate(mp.cells):
        for (x0, y0), (x1, y1) in polygon_edges(cell.region):
            ex, ey = x1 - x0, y1 - y0
            length = math.hypot(ex, ey)
            if length <= quant:
                continue
            nx, ny = -ey / length, ex / length
            c = -(nx * x0 + ny * y0)
            side = 1           # CCW polygon: interior is on the +n side
            if nx < 0.0 or (nx == 0.0 and ny < 0.0):
                nx, ny, c, side = -nx, -ny, -c, -side
            dx, dy = -ny, nx   # direction along the line
            t0 = dx * x0 + dy * y0
            t1 = dx * x1 + dy * y1
            if t0 > t1:
                t0, t1 = t1, t0
            key = (round(nx / 1e-9), round(ny / 1e-9), round(c / quant))
            buckets.setdefault(key, []).append((t0, t1, side, idx, c))
    return buckets, quant


def validate_map(mp: PWAffineMap) -> MapValidation:
    """Check tiling, conformity, boundary data, Lipschitz bound, fractions.

    Violations become report entries (with cell/edge identifiers), never
    exceptions.
    """
    issues: List[str] = []
    domain_area = mp.domain_area()
    diam = polygon_diameter(mp.domain)
    lip_scale = max(1.0, mp.lipschitz_bound) * max(1.0, diam)
    cont_tol = 1e-9 * lip_scale
    bdry_tol = 1e-12 * lip_scale

    areas = []
    for idx, cell in enumerate(mp.cells):
        a = cell.area()
        areas.append(a)
        if a <= 0.0:
            issues.append(f"cell {idx}: non-positive area {a:.3e}")
        if convexity_defect(cell.region) > 1e-9 * max(a, 1e-30) ** 0.5:
            issues.append(f"cell {idx}: non-convex region")
        gn = cell.gradient.frobenius()
        if gn > mp.lipschitz_bound * (1.0 + 1e-9) + 1e-12:
            issues.append(f"cell {idx}: gradient norm {gn:.6g} exceeds bound "
                          f"{mp.lipschitz_bound:.6g}")
    tiling_defect = abs(math.fsum(areas) - domain_area)
    if tiling_defect > 1e-9 * domain_area:
        issues.append(f"tiling: cell areas miss domain area by {tiling_defect:.3e}")

    # conformity along shared edge lines
    buckets, quant = _edge_records(mp)
    domain_lines = set()
    for (x0, y0), (x1, y1) in polygon_edges(mp.domain):
        ex, ey = x1 - x0, y1 - y0
        length = math.hypot(ex, ey)
        nx, ny = -ey / length, ex / length
        c = -(nx * x0 + ny * y0)
        if nx < 0.0 or (nx == 0.0 and ny < 0.0):
            nx, ny, c = -nx, -ny, -c
        domain_lines.add((round(nx / 1e-9), round(ny / 1e-9), round(c / quant)))

    worst = 0.0
    for key, records in buckets.items():
        nx = key[0] * 1e-9
        ny = key[1] * 1e-9
        dx, dy = -ny, nx
        on_boundary = key in domain_lines
        plus = sorted(r for r in records if r[2] > 0)
        minus = sorted(r for r in records if r[2] < 0)
        if on_boundary:
            # domain boundary: w must vanish on every edge endpoint
            for t0, t1, _, idx, c in records:
                cell = mp.cells[idx]
                for t in (t0, t1):
                    px = dx * t - nx * c
                    py = dy * t - ny * c
                    val = cell.value(px, py)
                    mag = math.hypot(val[0], val[1])
                    if mag > bdry_tol:
                        issues.append(
                            f"cell {idx}: boundary value {mag:.3e} at t={t:.6g}")
            continue
        # interior line: opposite sides must agree on overlaps, and the two
        # sides must cover each other (no holes)
        for recs_a, recs_b in ((plus, minus), (minus, plus)):
            for t0, t1, _, idx, c in recs_a:
                covered = 0.0
                for s0, s1, _, jdx, _c2 in recs_b:
                    lo, hi = max(t0, s0), min(t1, s1)
                    if hi - lo > quant:
                        covered += hi - lo
                        if recs_a is plus:
                            cell_a, cell_b = mp.cells[idx], mp.cells[jdx]
                            for t in (lo, hi):
                                px = dx * t - nx * c
                                py = dy * t - ny * c
                                va = cell_a.value(px, py)
                                vb = cell_b.value(px, py)
                                d = math.hypot(va[0] - vb[0], va[1] - vb[1])
                                worst = max(worst, d)
                                if d > cont_tol:
                                    issues.append(
                                        f"cells {idx}/{jdx}: continuity defect "
                                        f"{d:.3e} on shared edge")
                if (t1 - t0) - covered > 1e-7 * max(diam, 1.0):
                    issues.append(
                        f"cell {idx}: edge segment [{t0:.6g},{t1:.6g}] "
                        f"uncovered by neighbors (hole or overlap)")
    if mp.eta is not None:
        tf = mp.transition_fraction()
        if tf > mp.eta:
            issues.append(f"transition fraction {tf:.4g} exceeds eta={mp.eta}")
    return MapValidation(issues=issues, max_continuity_defect=worst)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def map_to_dict(mp: PWAffineMap) -> dict:
    def tag_of(cell: AffineCell):
        if cell.tag == "transition":
            return "transition"
        if isinstance(cell.tag, AtomLabel):
            return str(cell.tag)
        return None

    return {
        "domain": [list(v) for v in mp.domain],
        "delta": mp.delta,
        "eta": mp.eta,
        "lipschitz_bound": mp.lipschitz_bound,
        "meta": mp.meta,
        "cells": [
            {
                "vertices": [list(v) for v in cell.region],
                "gradient": list(cell.gradient),
                "offset": list(cell.offset),
                "tag": tag_of(cell),
            }
            for cell in mp.cells
        ],
    }


def save_map(path, mp: PWAffineMap) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(map_to_dict(mp), fh)
        fh.write("\n")
