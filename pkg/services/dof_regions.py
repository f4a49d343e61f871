"""DoF region polytopes, case conditions and corner points for the two-user MIMO BC and IC.

Pure functions over immutable inputs. All formulas use the effective transmit
antenna count min(M, 2N).
"""
import logging

import numpy as np

from models.channel import EXPONENT_TOL, AntennaConfig, ChannelKind, QualityExponents
from models.region import BaselineMode, CaseReport, CornerLabel, CornerPoint, DofRegion, HalfPlane
from utils.polytope import contains_point, enumerate_vertices, flag_redundant, tight_mask

logger = logging.getLogger(__name__)

TOL = 1e-9

CASE_ORDER = ("no_csit_needed", "case_1", "case_2", "case_3", "case_4a", "case_4b", "case_4c")

CASE_LABELS = {
    "no_csit_needed": frozenset({CornerLabel.DSTAR, CornerLabel.BSTAR}),
    "case_1": frozenset({CornerLabel.DSTAR, CornerLabel.BSTAR, CornerLabel.ESTAR, CornerLabel.FSTAR}),
    "case_2": frozenset({CornerLabel.DSTAR, CornerLabel.BSTAR, CornerLabel.CSTAR}),
    "case_3": frozenset({CornerLabel.BSTAR, CornerLabel.ASTAR}),
    "case_4a": frozenset({CornerLabel.DSTAR, CornerLabel.BSTAR, CornerLabel.E, CornerLabel.F}),
    "case_4b": frozenset({CornerLabel.BSTAR, CornerLabel.E, CornerLabel.G}),
    "case_4c": frozenset({CornerLabel.BSTAR, CornerLabel.E, CornerLabel.G}),
}

Constraint = tuple[float, float, float, str]


def _build_region(constraints: list[Constraint], name: str, tol: float = TOL) -> DofRegion:
    normals = np.array([[a, b] for a, b, _, _ in constraints], dtype=float)
    offsets = np.array([c for _, _, c, _ in constraints], dtype=float)
    vertices = enumerate_vertices(normals, offsets, tol)
    redundant = flag_redundant(normals, offsets, vertices, tol)
    halfplanes = tuple(
        HalfPlane(a=float(a), b=float(b), c=float(c), name=label, redundant=bool(flag))
        for (a, b, c, label), flag in zip(constraints, redundant)
    )
    return DofRegion(
        halfplanes=halfplanes,
        vertices=tuple((float(d1), float(d2)) for d1, d2 in vertices),
        name=name,
    )


def _box(cfg: AntennaConfig) -> list[Constraint]:
    cap = float(cfg.min_mn)
    return [
        (-1.0, 0.0, 0.0, "d1_nonneg"),
        (0.0, -1.0, 0.0, "d2_nonneg"),
        (1.0, 0.0, cap, "d1_cap"),
        (0.0, 1.0, cap, "d2_cap"),
    ]


def sum_cap(cfg: AntennaConfig) -> float:
    """min{M,2N} for the BC, min{2M,2N,max{M,N}} for the IC."""
    m, n = cfg.effective_m, cfg.n_rx
    if cfg.kind == ChannelKind.IC:
        return float(min(2 * m, 2 * n, max(m, n)))
    return float(m)


def _weighted(cfg: AntennaConfig, q: QualityExponents) -> list[Constraint]:
    m, mn = cfg.effective_m, cfg.min_mn
    gain = (m - mn) / m
    a1, a2 = q.alpha_avg
    return [
        (1.0 / mn, 1.0 / m, 1.0 + gain * a1, "weighted_1"),
        (1.0 / m, 1.0 / mn, 1.0 + gain * a2, "weighted_2"),
    ]


def outer_region(cfg: AntennaConfig, q: QualityExponents, tol: float = TOL) -> DofRegion:
    constraints = _box(cfg) + [(1.0, 1.0, sum_cap(cfg), "sum_cap")] + _weighted(cfg, q)
    return _build_region(constraints, "outer", tol)


def sufficient_delayed_threshold(cfg: AntennaConfig, q: QualityExponents) -> float:
    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    return min(1.0, float(m - cfg.min_mn), n * (1 + a1 + a2) / (m + n), n * (1 + a2) / m)


def delayed_csit_sufficient(cfg: AntennaConfig, q: QualityExponents) -> bool:
    return q.min_beta >= sufficient_delayed_threshold(cfg, q) - EXPONENT_TOL


def inner_region(cfg: AntennaConfig, q: QualityExponents, tol: float = TOL) -> DofRegion:
    """Achievable region. Equals the outer region when delayed CSIT is good enough."""
    if delayed_csit_sufficient(cfg, q):
        outer = outer_region(cfg, q, tol)
        return DofRegion(halfplanes=outer.halfplanes, vertices=outer.vertices, name="inner")
    mn, m = cfg.min_mn, cfg.effective_m
    delayed_sum = mn + (m - mn) * q.min_beta
    constraints = (
        _box(cfg)
        + [(1.0, 1.0, sum_cap(cfg), "sum_cap"), (1.0, 1.0, delayed_sum, "delayed_sum")]
        + _weighted(cfg, q)
    )
    return _build_region(constraints, "inner", tol)


def baseline_region(cfg: AntennaConfig, mode: BaselineMode, tol: float = TOL) -> DofRegion:
    mode = BaselineMode(mode)
    if mode == BaselineMode.FULL_CSIT:
        return _build_region(_box(cfg) + [(1.0, 1.0, sum_cap(cfg), "sum_cap")], mode.value, tol)
    if cfg.kind == ChannelKind.IC:
        no_csit_sum = float(min(cfg.n_rx, 2 * cfg.effective_m))
    else:
        no_csit_sum = float(cfg.min_mn)
    return _build_region(_box(cfg) + [(1.0, 1.0, no_csit_sum, "sum_cap")], mode.value, tol)


def region_contains(region: DofRegion, point, tol: float = TOL) -> bool:
    normals, offsets = region.as_arrays()
    return contains_point(normals, offsets, point, tol)


def region_equal(first: DofRegion, second: DofRegion, tol: float = TOL) -> bool:
    return (
        all(region_contains(second, v, tol) for v in first.vertices)
        and all(region_contains(first, v, tol) for v in second.vertices)
    )


def tight_halfplanes(region: DofRegion, point, tol: float = TOL) -> list[str]:
    normals, offsets = region.as_arrays()
    mask = tight_mask(normals, offsets, point, tol)
    return [h.name for h, tight in zip(region.halfplanes, mask) if tight]


def max_sum_dof(region: DofRegion) -> float:
    return max(d1 + d2 for d1, d2 in region.vertices)


def _less_than(lhs: float, rhs: float) -> set[bool]:
    """Outcomes of lhs < rhs; both when the two sides tie."""
    if abs(lhs - rhs) <= EXPONENT_TOL:
        return {True, False}
    return {lhs < rhs}


def active_case(cfg: AntennaConfig, q: QualityExponents) -> CaseReport:
    if not cfg.needs_csit:
        return CaseReport(cases=("no_csit_needed",), labels=CASE_LABELS["no_csit_needed"])

    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    beta_min = q.min_beta
    beta_suf = {not x for x in _less_than(beta_min, sufficient_delayed_threshold(cfg, q))}
    alpha1 = _less_than(a1, n * (1 + a2) / m)
    alpha12 = _less_than(m / n, a1 + a2)
    beta_alpha1 = {not x for x in _less_than(beta_min, a1)}

    cases = set()
    for suf in beta_suf:
        for a1_holds in alpha1:
            if suf and not a1_holds:
                cases.add("case_3")
            elif suf:
                cases.update("case_1" if a12 else "case_2" for a12 in alpha12)
            elif not a1_holds:
                cases.add("case_4c")
            else:
                cases.update("case_4a" if ba else "case_4b" for ba in beta_alpha1)

    ordered = tuple(c for c in CASE_ORDER if c in cases)
    labels = frozenset().union(*(CASE_LABELS[c] for c in ordered))
    return CaseReport(cases=ordered, labels=labels)


def corner_coordinates(cfg: AntennaConfig, q: QualityExponents) -> dict[CornerLabel, tuple[float, float]]:
    """Closed-form coordinates of every labelled corner, active or not."""
    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    bm = q.min_beta
    scale = m * n / (m + n)
    return {
        CornerLabel.ASTAR: (n, (m - n) * n * (1 + a2) / m),
        CornerLabel.BSTAR: ((m - n) * a2, n),
        CornerLabel.CSTAR: (scale * (1 + a1 - n / m * a2), scale * (1 + a2 - n / m * a1)),
        CornerLabel.DSTAR: (n, (m - n) * a1),
        CornerLabel.ESTAR: (m - n * a2, n * a2),
        CornerLabel.FSTAR: (n * a1, m - n * a1),
        CornerLabel.E: (m * bm - n * a2, n * a2 + n * (1 - bm)),
        CornerLabel.F: (n * a1 + n * (1 - bm), m * bm - n * a1),
        CornerLabel.G: (n, (m - n) * bm),
    }


def corner_points(cfg: AntennaConfig, q: QualityExponents) -> list[CornerPoint]:
    report = active_case(cfg, q)
    if not cfg.needs_csit:
        cap = float(cfg.min_mn)
        return [CornerPoint(CornerLabel.BSTAR, 0.0, cap), CornerPoint(CornerLabel.DSTAR, cap, 0.0)]

    coordinates = corner_coordinates(cfg, q)
    points: list[CornerPoint] = []
    for label in CornerLabel:
        if label not in report.labels:
            continue
        d1, d2 = coordinates[label]
        if any(np.hypot(d1 - p.d1, d2 - p.d2) < TOL for p in points):
            continue
        points.append(CornerPoint(label, float(d1), float(d2)))
    return points
