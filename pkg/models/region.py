from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class CornerLabel(str, Enum):
    """Corner points of the outer bound (starred) and of the low-delayed-quality inner bound."""
    ASTAR = "Astar"
    BSTAR = "Bstar"
    CSTAR = "Cstar"
    DSTAR = "Dstar"
    ESTAR = "Estar"
    FSTAR = "Fstar"
    E = "E"
    F = "F"
    G = "G"


@dataclass(frozen=True)
class HalfPlane:
    """Constraint a*d1 + b*d2 <= c."""
    a: float
    b: float
    c: float
    name: str = ""
    redundant: bool = False

    def __post_init__(self):
        if not all(np.isfinite(v) for v in (self.a, self.b, self.c)):
            raise ValueError(f"half-plane {self.name!r} has non-finite coefficients")
        if self.a == 0 and self.b == 0:
            raise ValueError(f"half-plane {self.name!r} has a zero normal")


@dataclass(frozen=True)
class DofRegion:
    """Bounded convex polygon of DoF pairs, vertices counter-clockwise from the origin."""
    halfplanes: tuple[HalfPlane, ...]
    vertices: tuple[tuple[float, float], ...]
    name: str = ""

    @property
    def active_halfplanes(self) -> tuple[HalfPlane, ...]:
        return tuple(h for h in self.halfplanes if not h.redundant)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Stacked normals (k, 2) and offsets (k,)."""
        normals = np.array([[h.a, h.b] for h in self.halfplanes], dtype=float)
        offsets = np.array([h.c for h in self.halfplanes], dtype=float)
        return normals, offsets


@dataclass(frozen=True)
class CornerPoint:
    label: CornerLabel
    d1: float
    d2: float

    @property
    def point(self) -> tuple[float, float]:
        return (self.d1, self.d2)


@dataclass(frozen=True)
class CaseReport:
    """Which case conditions hold, and the corner labels they activate."""
    cases: tuple[str, ...]
    labels: frozenset = field(default_factory=frozenset)

    @property
    def name(self) -> str:
        return "+".join(self.cases)


class BaselineMode(str, Enum):
    FULL_CSIT = "full_csit"
    NO_CSIT = "no_csit"
