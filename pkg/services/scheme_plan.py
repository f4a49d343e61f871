"""Calibrate the phase-Markov scheme: delta_bar bound, corner-point settings, per-slot sequences and the bit ledger."""
import logging
from typing import Optional

import numpy as np

from models.channel import AntennaConfig, ChannelKind, QualityExponents
from models.plan import PhasePlan
from models.region import CornerLabel
from services.dof_regions import active_case
from utils.numeric import positive_part, solve_slot_deltas

logger = logging.getLogger(__name__)

TOL = 1e-9


class TargetInactiveError(Exception):
    """Raised when the requested corner point is not active for the given exponents."""
    pass


class DeltaBarOutOfRangeError(Exception):
    """Raised when delta_bar exceeds its admissible bound."""
    pass


class InfeasibleError(Exception):
    """Raised when no per-slot delta sequence meets the power constraints."""
    pass


def _require_scheme_regime(cfg: AntennaConfig) -> None:
    if not cfg.needs_csit:
        raise ValueError(
            f"the scheme needs N < min(M, 2N); M={cfg.m_tx}, N={cfg.n_rx} needs no CSIT")


def delta_bar_bound(cfg: AntennaConfig, q: QualityExponents) -> float:
    _require_scheme_regime(cfg)
    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    b1, b2 = q.beta_avg
    return min(1.0, b1, b2, n * (1 + a1 + a2) / (m + n), n * (1 + a2) / m)


def delta_com(cfg: AntennaConfig, q: QualityExponents, delta_bar: float) -> float:
    """Common-symbol room left after the quantized interference."""
    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    return n - (m - n) * delta_bar - n * positive_part(delta_bar - a1) - n * positive_part(delta_bar - a2)


def _settings(cfg: AntennaConfig, q: QualityExponents, target: CornerLabel) -> tuple[float, float]:
    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    bm = q.min_beta
    return {
        CornerLabel.ESTAR: (1.0, 0.0),
        CornerLabel.FSTAR: (1.0, 1.0),
        CornerLabel.BSTAR: (a2, 0.0),
        CornerLabel.DSTAR: (a1, 1.0),
        CornerLabel.CSTAR: (n * (1 + a1 + a2) / (m + n), 0.0),
        CornerLabel.ASTAR: (n * (1 + a2) / m, 1.0),
        CornerLabel.E: (bm, 0.0),
        CornerLabel.F: (bm, 1.0),
        CornerLabel.G: (bm, 1.0),
    }[target]


def calibrate(cfg: AntennaConfig, q: QualityExponents, target) -> tuple[float, float]:
    """(delta_bar, omega) that reach the target corner point.

    Raises TargetInactiveError if the target is not an active corner for (cfg, q).
    """
    _require_scheme_regime(cfg)
    target = CornerLabel(target)
    report = active_case(cfg, q)
    if target not in report.labels:
        active = ", ".join(sorted(label.value for label in report.labels))
        raise TargetInactiveError(f"{target.value} is not active under {report.name}; active corner points: {active}")
    return _settings(cfg, q, target)


def general_dof_point(cfg: AntennaConfig, q: QualityExponents, delta_bar: float, omega: float) -> tuple[float, float]:
    bound = delta_bar_bound(cfg, q)
    if delta_bar < -TOL or delta_bar > bound + TOL:
        raise DeltaBarOutOfRangeError(f"delta_bar={delta_bar} outside [0, {bound:.6g}]")
    if not -TOL <= omega <= 1 + TOL:
        raise ValueError(f"omega={omega} outside [0, 1]")

    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    surplus = delta_com(cfg, q, delta_bar)
    d1 = (m - n) * delta_bar + n * positive_part(delta_bar - a2) + omega * surplus
    d2 = (m - n) * delta_bar + n * positive_part(delta_bar - a1) + (1 - omega) * surplus
    return d1, d2


def _check_user_deltas(alpha: np.ndarray, beta: np.ndarray, delta: np.ndarray, delta_bar: float) -> float:
    """Re-check the three constraint families; returns the worst mean residual."""
    over = np.flatnonzero(delta > beta + TOL)
    if over.size:
        raise InfeasibleError(f"delta_t <= beta_t violated at slot {over[0]}")
    mean_residual = abs(delta.mean() - delta_bar)
    if mean_residual > TOL:
        raise InfeasibleError(f"mean delta_t = delta_bar violated by {mean_residual:.3g}")
    excess_residual = abs(positive_part(delta - alpha).mean() - positive_part(delta_bar - alpha.mean()))
    if excess_residual > TOL:
        raise InfeasibleError(f"mean (delta_t - alpha_t)^+ = (delta_bar - alpha_bar)^+ violated by {excess_residual:.3g}")
    return max(mean_residual, excess_residual)


def solve_user_deltas(alpha_seq, beta_seq, delta_bar: float) -> np.ndarray:
    """delta_t for one user. Raises InfeasibleError naming the violated constraint."""
    alpha = np.asarray(alpha_seq, dtype=float)
    beta = np.asarray(beta_seq, dtype=float)
    try:
        delta = solve_slot_deltas(alpha, beta, delta_bar)
    except ValueError as e:
        raise InfeasibleError(str(e)) from e
    _check_user_deltas(alpha, beta, delta, delta_bar)
    return delta


def solve_delta_sequences(q: QualityExponents, delta_bar: float, t_slots: Optional[int] = None) -> np.ndarray:
    """Per-slot delta_t for both users, shape (2, T).

    Without per-slot sequences the averages are held constant over t_slots.
    """
    if t_slots is None:
        if not q.has_sequences:
            raise ValueError("t_slots is required when the exponents carry no sequences")
        t_slots = len(q.alpha_seq[0])
    alpha, beta = q.slot_exponents(t_slots)
    return np.vstack([solve_user_deltas(alpha[i], beta[i], delta_bar) for i in range(2)])


def plan_for_point(
    cfg: AntennaConfig,
    q: QualityExponents,
    delta_bar: float,
    omega: float,
    t_slots: int,
    s_phases: int,
    target: Optional[CornerLabel] = None,
) -> PhasePlan:
    if t_slots < 1 or s_phases < 1:
        raise ValueError(f"t_slots and s_phases must be >= 1, got T={t_slots}, S={s_phases}")
    dof_point = general_dof_point(cfg, q, delta_bar, omega)

    m, n = cfg.effective_m, cfg.n_rx
    a1, a2 = q.alpha_avg
    alpha, beta = q.slot_exponents(t_slots)
    delta = solve_delta_sequences(q, delta_bar, t_slots)
    excess = positive_part(delta - alpha)
    residual = max(
        max(abs(delta[i].mean() - delta_bar) for i in range(2)),
        max(abs(excess[i].mean() - positive_part(delta_bar - alpha[i].mean())) for i in range(2)),
    )

    common_budget = n - (m - n) * delta_bar
    quant_budget = n * (positive_part(delta_bar - a1) + positive_part(delta_bar - a2))
    surplus = delta_com(cfg, q, delta_bar)
    ic_split = None
    if cfg.kind == ChannelKind.IC:
        ic_split = (
            omega * surplus + n * positive_part(delta_bar - a2),
            (1 - omega) * surplus + n * positive_part(delta_bar - a1),
        )

    plan = PhasePlan(
        kind=cfg.kind,
        m_tx=cfg.m_tx,
        m_eff=m,
        n_rx=n,
        t_slots=t_slots,
        s_phases=s_phases,
        delta_bar=float(delta_bar),
        omega=float(omega),
        delta_seq=delta,
        alpha_seq=alpha,
        beta_seq=beta,
        power_table={
            "c": np.ones(t_slots),
            "a": delta[1].copy(),
            "a_prime": excess[1].copy(),
            "b": delta[0].copy(),
            "b_prime": excess[0].copy(),
        },
        rate_table={
            "c": np.full(t_slots, common_budget),
            "a": (m - n) * delta[1],
            "a_prime": n * excess[1],
            "b": (m - n) * delta[0],
            "b_prime": n * excess[0],
        },
        private_budget=(
            (m - n) * delta_bar + n * positive_part(delta_bar - a2),
            (m - n) * delta_bar + n * positive_part(delta_bar - a1),
        ),
        common_budget=common_budget,
        quant_budget=quant_budget,
        delta_com=surplus,
        dof_point=dof_point,
        target=target,
        ic_common_split=ic_split,
        sequence_residual=float(residual),
    )
    logger.info("  plan delta_bar=%.4g omega=%.4g -> DoF (%.4g, %.4g)", delta_bar, omega, *dof_point)
    return plan


def build_phase_plan(cfg: AntennaConfig, q: QualityExponents, target, t_slots: int, s_phases: int) -> PhasePlan:
    target = CornerLabel(target)
    delta_bar, omega = calibrate(cfg, q, target)
    return plan_for_point(cfg, q, delta_bar, omega, t_slots, s_phases, target=target)
