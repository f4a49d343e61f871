from dataclasses import dataclass, field
from typing import Optional

from models.channel import ChannelKind
from models.region import CornerLabel


@dataclass(frozen=True)
class MacCheck:
    """Log-det bounds against designed rates at one receiver for one phase, in bits per phase.

    IC checks also hold the common rate of each transmitter (c1, c2), the bound
    on each one alone and the bound on the private streams plus that one.
    """
    receiver: int
    phase_index: int
    designed_private: float
    designed_common: float
    bound_private: float
    bound_common: float
    bound_sum: float
    effective_noise: float = 0.0
    designed_split: tuple[float, ...] = ()
    bound_split: tuple[float, ...] = ()
    bound_private_split: tuple[float, ...] = ()

    @property
    def margins(self) -> dict[str, float]:
        margins = {
            "private": self.bound_private - self.designed_private,
            "common": self.bound_common - self.designed_common,
            "sum": self.bound_sum - self.designed_private - self.designed_common,
        }
        streams = zip(self.designed_split, self.bound_split, self.bound_private_split)
        for j, (designed, alone, joint) in enumerate(streams, start=1):
            margins[f"common_{j}"] = alone - designed
            margins[f"private_common_{j}"] = joint - self.designed_private - designed
        return margins

    @property
    def margin_min(self) -> float:
        return min(self.margins.values())

    @property
    def feasible(self) -> bool:
        return self.margin_min >= 0.0

    def common_cap(self) -> float:
        return min(self.designed_common, self.bound_common, self.bound_sum)

    def common_split_cap(self) -> tuple[float, ...]:
        """Decodable (c1, c2) rates with common priority, scaled down together to fit common_cap. Empty for the BC."""
        caps = [
            max(min(designed, alone, joint), 0.0)
            for designed, alone, joint in zip(self.designed_split, self.bound_split, self.bound_private_split)
        ]
        total, limit = sum(caps), max(self.common_cap(), 0.0)
        if total > limit:
            caps = [cap * limit / total for cap in caps]
        return tuple(caps)

    def achieved(self, common_rate: Optional[float] = None, split: Optional[tuple[float, ...]] = None) -> tuple[float, float]:
        """(common, private) rates actually decodable, common first."""
        if split is None:
            split = self.common_split_cap()
        if common_rate is None:
            common_rate = sum(split) if self.designed_split else self.common_cap()
        private = min(
            self.designed_private,
            self.bound_private,
            self.bound_sum - common_rate,
            *(joint - rate for joint, rate in zip(self.bound_private_split, split)),
        )
        return common_rate, max(private, 0.0)


@dataclass(frozen=True)
class SnrPoint:
    """Per-SNR results. Rates are bits per slot, index 0 for user 1.

    distortion is the mean of E||iota_est - iota_quantized||^2 over the
    quantized slots; bits_budget and bits_used are per receiver and phase.
    """
    snr: float
    designed_rate: tuple[float, float]
    achieved_rate: tuple[float, float]
    private_designed: tuple[float, float]
    margin_min: tuple[float, float]
    feasible_fraction: tuple[float, float]
    decodable_fraction: float
    distortion: float
    max_distortion: float
    bits_budget: float
    bits_used: float
    overloads: int
    effective_noise: tuple[float, float]
    phases: int
    redraws: int = 0
    max_bit_shortfall: float = 0.0
    checks: tuple[MacCheck, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class SimReport:
    kind: ChannelKind
    m_tx: int
    n_rx: int
    target: Optional[CornerLabel]
    dof_point: tuple[float, float]
    delta_bar: float
    omega: float
    backoff_bits: float
    points: tuple[SnrPoint, ...]
    d_hat: tuple[float, float]
    stderr: tuple[float, float]
    fit_snr: tuple[float, ...]

    def margins(self) -> list[dict]:
        return [
            {
                "P": point.snr,
                "margin_min": list(point.margin_min),
                "feasible_fraction": list(point.feasible_fraction),
                "decodable_fraction": point.decodable_fraction,
            }
            for point in self.points
        ]
