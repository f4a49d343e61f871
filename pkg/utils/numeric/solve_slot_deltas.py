import numpy as np

from utils.numeric._constants import MEAN_TOL


def solve_slot_deltas(alpha, beta, target_mean: float, tol: float = MEAN_TOL) -> np.ndarray:
    """Per-slot delta_t with delta_t <= beta_t, mean delta_t = target_mean and
    mean (delta_t - alpha_t)^+ = (target_mean - mean alpha)^+.

    Above the mean alpha every slot sits between alpha_t and beta_t; below it
    every slot sits between 0 and alpha_t. Raises ValueError when no such
    sequence exists.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    alpha_bar, beta_bar = alpha.mean(), beta.mean()

    if target_mean < -tol:
        raise ValueError(f"delta_bar={target_mean} is negative")
    if target_mean > beta_bar + tol:
        raise ValueError(f"delta_bar={target_mean} exceeds mean beta {beta_bar:.6g} (delta_t <= beta_t)")
    bad = np.flatnonzero(alpha > beta + tol)
    if bad.size:
        raise ValueError(f"slot {bad[0]}: alpha_t={alpha[bad[0]]} exceeds beta_t={beta[bad[0]]}")

    if target_mean >= alpha_bar:
        span = beta_bar - alpha_bar
        weight = 0.0 if span <= tol else min((target_mean - alpha_bar) / span, 1.0)
        return alpha + weight * (beta - alpha)
    if alpha_bar <= tol:
        return np.zeros_like(alpha)
    return alpha * (max(target_mean, 0.0) / alpha_bar)
