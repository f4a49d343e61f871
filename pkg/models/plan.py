from dataclasses import dataclass
from typing import Optional

import numpy as np

from models.channel import ChannelKind
from models.region import CornerLabel

SYMBOLS = ("c", "a", "a_prime", "b", "b_prime")


@dataclass(frozen=True, eq=False)
class PhasePlan:
    """Calibrated phase-Markov scheme for one phase of T slots.

    Per-slot quantities are normalized by log P. delta_seq, alpha_seq and
    beta_seq have shape (2, T), row i for user i+1. power_table and rate_table
    map each symbol of SYMBOLS to a length-T array.
    """
    kind: ChannelKind
    m_tx: int
    m_eff: int
    n_rx: int
    t_slots: int
    s_phases: int
    delta_bar: float
    omega: float
    delta_seq: np.ndarray
    alpha_seq: np.ndarray
    beta_seq: np.ndarray
    power_table: dict[str, np.ndarray]
    rate_table: dict[str, np.ndarray]
    private_budget: tuple[float, float]
    common_budget: float
    quant_budget: float
    delta_com: float
    dof_point: tuple[float, float]
    target: Optional[CornerLabel] = None
    ic_common_split: Optional[tuple[float, float]] = None
    sequence_residual: float = 0.0

    @property
    def quant_slot_budget(self) -> np.ndarray:
        """Normalized quantization bits per slot for the interference seen at each receiver, shape (2, T)."""
        return self.n_rx * np.maximum(self.delta_seq - self.alpha_seq, 0.0)

    @property
    def ic_new_common(self) -> tuple[float, float]:
        """Normalized new information per slot on (c1, c2).

        Each transmitter's share of ic_common_split less the quantized interference
        it forwards: transmitter 1 forwards what its private streams caused at receiver 2.
        """
        if self.ic_common_split is None:
            return 0.0, 0.0
        forwarded = self.n_rx * np.maximum(self.delta_bar - self.alpha_seq.mean(axis=1), 0.0)
        return tuple(float(max(split - forwarded[1 - j], 0.0)) for j, split in enumerate(self.ic_common_split))

    def ledger(self) -> dict[str, dict[str, float]]:
        """Bits per slot and per phase carried by each symbol group, normalized by log P."""
        per_slot = {
            "private_1": self.private_budget[0],
            "private_2": self.private_budget[1],
            "common": self.common_budget,
            "quantized": self.quant_budget,
            "delta_com": self.delta_com,
        }
        if self.ic_common_split is not None:
            per_slot["common_tx1"] = self.ic_common_split[0]
            per_slot["common_tx2"] = self.ic_common_split[1]
        return {
            "per_slot": per_slot,
            "per_phase": {k: v * self.t_slots for k, v in per_slot.items()},
        }
