"""
Pydantic models for run configuration, API request bodies and file headers.
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.channel import AntennaConfig, ChannelKind, QualityExponents
from models.region import CornerLabel

DEFAULT_LADDER = [1e3, 1e4, 1e5, 1e6]
DEFAULT_BACKOFF_BITS = 10.0


class RunConfig(BaseModel):
    """Everything one region/plan/simulate run needs."""
    model_config = ConfigDict(extra="forbid")

    kind: ChannelKind = ChannelKind.BC
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    alpha: tuple[float, float] = (0.0, 0.0)
    beta: tuple[float, float] = (1.0, 1.0)
    alpha_seq: Optional[tuple[list[float], list[float]]] = None
    beta_seq: Optional[tuple[list[float], list[float]]] = None
    target: Optional[CornerLabel] = None
    delta_bar: Optional[float] = None
    omega: Optional[float] = None
    t_slots: int = Field(default=8, ge=1)
    s_phases: int = Field(default=25, ge=1)
    snr: list[float] = Field(default_factory=lambda: list(DEFAULT_LADDER))
    trials: int = Field(default=50, ge=1)
    seed: int = Field(default=0, ge=0)
    eta: int = Field(default=1, ge=1)
    backoff_bits: Optional[float] = None
    tol: float = Field(default=1e-9, gt=0)
    out_dir: Optional[str] = None

    @field_validator("alpha", "beta")
    @classmethod
    def _unit_interval(cls, value, info):
        for i, v in enumerate(value):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{info.field_name}^({i + 1})={v} outside [0, 1]")
        return value

    @field_validator("snr")
    @classmethod
    def _snr_above_one(cls, value):
        if any(p <= 1.0 for p in value):
            raise ValueError("every SNR must be > 1 (linear scale)")
        return sorted(value)

    @model_validator(mode="after")
    def _consistent(self):
        self.quality_exponents()
        if self.delta_bar is not None and self.omega is None:
            raise ValueError("delta_bar needs omega")
        return self

    def antenna_config(self) -> AntennaConfig:
        return AntennaConfig(m_tx=self.m, n_rx=self.n, kind=self.kind)

    def quality_exponents(self) -> QualityExponents:
        if self.alpha_seq is not None and not {"alpha", "beta"} & self.model_fields_set:
            return QualityExponents.from_sequences(self.alpha_seq, self.beta_seq)
        return QualityExponents(
            alpha_avg=self.alpha,
            beta_avg=self.beta,
            alpha_seq=self.alpha_seq,
            beta_seq=self.beta_seq,
        )

    @property
    def resolved_backoff(self) -> float:
        return self.backoff_bits if self.backoff_bits is not None else DEFAULT_BACKOFF_BITS


class BlockHeader(BaseModel):
    """Header stored alongside a dumped channel block."""
    model_config = ConfigDict(extra="forbid")

    kind: ChannelKind
    m_tx: int
    n_rx: int
    alpha_avg: tuple[float, float]
    beta_avg: tuple[float, float]
    alpha_seq: Optional[tuple[list[float], list[float]]] = None
    beta_seq: Optional[tuple[list[float], list[float]]] = None
    seed: int
    snr: float
    eta: int
    t_slots: int
