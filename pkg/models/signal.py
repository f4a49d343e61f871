from dataclasses import dataclass, field

import numpy as np

from models.channel import AntennaConfig, ChannelKind, QualityExponents

BC_LINKS = ("1", "2")
# "ij" is the link from transmitter j to receiver i.
IC_LINKS = ("11", "12", "21", "22")


def links_for(kind: ChannelKind) -> tuple[str, ...]:
    return IC_LINKS if ChannelKind(kind) == ChannelKind.IC else BC_LINKS


def receiver_of(link: str) -> int:
    """Receiver index (0 or 1) whose feedback quality governs a link."""
    return int(link[0]) - 1


@dataclass(frozen=True, eq=False)
class ChannelSlot:
    """True N x M channels of one slot and the transmitter's current and delayed estimates."""
    h_true: dict[str, np.ndarray]
    h_current: dict[str, np.ndarray]
    h_delayed: dict[str, np.ndarray]
    slot_index: int
    snr: float
    alpha: tuple[float, float]
    beta: tuple[float, float]
    delayed_available_at: int

    def current_error(self, link: str) -> np.ndarray:
        return self.h_true[link] - self.h_current[link]

    def delayed_error(self, link: str) -> np.ndarray:
        return self.h_true[link] - self.h_delayed[link]


@dataclass(frozen=True, eq=False)
class ChannelBlock:
    """Slots of one phase, with the header needed to regenerate them."""
    cfg: AntennaConfig
    q: QualityExponents
    seed: int
    snr: float
    eta: int
    slots: tuple[ChannelSlot, ...]

    def __len__(self) -> int:
        return len(self.slots)

    def __iter__(self):
        return iter(self.slots)

    def __getitem__(self, index: int) -> ChannelSlot:
        return self.slots[index]


@dataclass(frozen=True, eq=False)
class SlotSignal:
    """Precoders, symbols and stream powers of one slot.

    BC: one transmitter sends W c + U a + U' a' + V b + V' b'.
    IC: transmitter 1 sends W1 c1 + U a + U' a', transmitter 2 sends W2 c2 + V b + V' b'.
    Powers are per stream, in linear scale; common streams are keyed c1 (and c2)
    after their precoder. Symbols already carry their power.
    """
    precoder_common: tuple[np.ndarray, ...]
    precoder_zf_a: np.ndarray
    precoder_rand_a: np.ndarray
    precoder_zf_b: np.ndarray
    precoder_rand_b: np.ndarray
    powers: dict[str, float] = field(default_factory=dict)
    symbols: dict[str, np.ndarray] = field(default_factory=dict)

    def private_streams(self, user: int) -> tuple[np.ndarray, np.ndarray]:
        """(precoder, per-column power) of one user's private streams (user 0 -> a, a'; user 1 -> b, b')."""
        if user == 0:
            zf, rand, names = self.precoder_zf_a, self.precoder_rand_a, ("a", "a_prime")
        else:
            zf, rand, names = self.precoder_zf_b, self.precoder_rand_b, ("b", "b_prime")
        powers = np.concatenate([
            np.full(zf.shape[1], self.powers[names[0]]),
            np.full(rand.shape[1], self.powers[names[1]]),
        ])
        return np.hstack([zf, rand]), powers

    def private_covariance(self, user: int) -> np.ndarray:
        precoder, powers = self.private_streams(user)
        return (precoder * powers) @ precoder.conj().T

    def private_vector(self, user: int) -> np.ndarray:
        if user == 0:
            return self.precoder_zf_a @ self.symbols["a"] + self.precoder_rand_a @ self.symbols["a_prime"]
        return self.precoder_zf_b @ self.symbols["b"] + self.precoder_rand_b @ self.symbols["b_prime"]

    def common_streams(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        precoder = self.precoder_common[index]
        return precoder, np.full(precoder.shape[1], self.powers[f"c{index + 1}"])


@dataclass(frozen=True, eq=False)
class InterferenceRecord:
    """Interference of one slot at one receiver, its delayed reconstruction and quantized description.

    quant_noise_power is the measured ||iota_est - iota_quantized||^2 summed over the N
    entries; error_variance is the expected error variance of each complex entry; levels
    holds the quantizer level count of each real dimension, real parts first.
    """
    receiver: int
    slot_index: int
    iota_true: np.ndarray
    iota_est: np.ndarray
    iota_quantized: np.ndarray
    quant_noise_power: float
    error_variance: np.ndarray
    bits_budget: float
    bits_used: float
    overloads: int
    levels: np.ndarray
