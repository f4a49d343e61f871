from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

EXPONENT_TOL = 1e-12
MEAN_TOL = 1e-9


class ChannelKind(str, Enum):
    """Two-user topology."""
    BC = "bc"
    IC = "ic"


@dataclass(frozen=True)
class AntennaConfig:
    """Antenna counts per transmitter (M) and per receiver (N)."""
    m_tx: int
    n_rx: int
    kind: ChannelKind = ChannelKind.BC

    def __post_init__(self):
        if self.m_tx < 1 or self.n_rx < 1:
            raise ValueError(f"antenna counts must be >= 1, got M={self.m_tx}, N={self.n_rx}")
        object.__setattr__(self, "kind", ChannelKind(self.kind))

    @property
    def effective_m(self) -> int:
        """M > 2N behaves like M = 2N."""
        return min(self.m_tx, 2 * self.n_rx)

    @property
    def min_mn(self) -> int:
        return min(self.m_tx, self.n_rx)

    @property
    def needs_csit(self) -> bool:
        return self.effective_m > self.n_rx


def _check_range(name: str, value: float) -> None:
    if not np.isfinite(value) or value < -EXPONENT_TOL or value > 1 + EXPONENT_TOL:
        raise ValueError(f"{name}={value} outside [0, 1]")


@dataclass(frozen=True)
class QualityExponents:
    """Current (alpha) and delayed (beta) CSIT quality exponents of both users.

    Averages are always set; per-slot sequences are optional and, when given,
    must average to the stated values.
    """
    alpha_avg: tuple[float, float]
    beta_avg: tuple[float, float]
    alpha_seq: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None
    beta_seq: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha_avg", tuple(float(a) for a in self.alpha_avg))
        object.__setattr__(self, "beta_avg", tuple(float(b) for b in self.beta_avg))
        if len(self.alpha_avg) != 2 or len(self.beta_avg) != 2:
            raise ValueError("alpha and beta need one value per user")
        for i in range(2):
            _check_range(f"alpha^({i + 1})", self.alpha_avg[i])
            _check_range(f"beta^({i + 1})", self.beta_avg[i])
            if self.alpha_avg[i] > self.beta_avg[i] + EXPONENT_TOL:
                raise ValueError(f"alpha^({i + 1})={self.alpha_avg[i]} exceeds beta^({i + 1})={self.beta_avg[i]}")
        if self.alpha_avg[1] > self.alpha_avg[0] + EXPONENT_TOL:
            raise ValueError(
                f"users must be labelled so that alpha^(2) <= alpha^(1), got {self.alpha_avg}; swap the users")
        if (self.alpha_seq is None) != (self.beta_seq is None):
            raise ValueError("alpha_seq and beta_seq must be given together")
        if self.alpha_seq is not None:
            self._check_sequences()

    def _check_sequences(self) -> None:
        alpha = np.asarray(self.alpha_seq, dtype=float)
        beta = np.asarray(self.beta_seq, dtype=float)
        if alpha.ndim != 2 or alpha.shape[0] != 2 or alpha.shape != beta.shape or alpha.shape[1] == 0:
            raise ValueError("alpha_seq and beta_seq must hold two equal-length sequences")
        object.__setattr__(self, "alpha_seq", tuple(tuple(float(x) for x in row) for row in alpha))
        object.__setattr__(self, "beta_seq", tuple(tuple(float(x) for x in row) for row in beta))
        for i in range(2):
            for t in range(alpha.shape[1]):
                _check_range(f"alpha_{t}^({i + 1})", alpha[i, t])
                _check_range(f"beta_{t}^({i + 1})", beta[i, t])
                if alpha[i, t] > beta[i, t] + EXPONENT_TOL:
                    raise ValueError(f"alpha_{t}^({i + 1})={alpha[i, t]} exceeds beta_{t}^({i + 1})={beta[i, t]}")
            if abs(alpha[i].mean() - self.alpha_avg[i]) > MEAN_TOL:
                raise ValueError(f"mean of alpha_seq[{i}] does not match alpha^({i + 1})")
            if abs(beta[i].mean() - self.beta_avg[i]) > MEAN_TOL:
                raise ValueError(f"mean of beta_seq[{i}] does not match beta^({i + 1})")

    @classmethod
    def from_sequences(cls, alpha_seq, beta_seq) -> "QualityExponents":
        alpha = np.asarray(alpha_seq, dtype=float)
        beta = np.asarray(beta_seq, dtype=float)
        return cls(
            alpha_avg=tuple(alpha.mean(axis=1)),
            beta_avg=tuple(beta.mean(axis=1)),
            alpha_seq=alpha_seq,
            beta_seq=beta_seq,
        )

    @property
    def min_beta(self) -> float:
        return min(self.beta_avg)

    @property
    def has_sequences(self) -> bool:
        return self.alpha_seq is not None

    def slot_exponents(self, t_slots: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-slot (alpha, beta) arrays of shape (2, t_slots)."""
        if self.alpha_seq is None:
            alpha = np.repeat(np.asarray(self.alpha_avg)[:, None], t_slots, axis=1)
            beta = np.repeat(np.asarray(self.beta_avg)[:, None], t_slots, axis=1)
            return alpha, beta
        alpha = np.asarray(self.alpha_seq)
        if alpha.shape[1] != t_slots:
            raise ValueError(f"exponent sequences have {alpha.shape[1]} slots, expected {t_slots}")
        return alpha, np.asarray(self.beta_seq)
