"""Rayleigh fading channels with synthesized current and delayed CSIT. No scheme knowledge."""
import json
import logging
from pathlib import Path

import numpy as np
from scipy.stats import linregress

from models.channel import AntennaConfig, QualityExponents
from models.config import BlockHeader
from models.signal import ChannelBlock, ChannelSlot, links_for, receiver_of
from utils.numeric import complex_gaussian

logger = logging.getLogger(__name__)

MIN_SAMPLES = 1000


class InsufficientSamplesError(ValueError):
    """Raised when an exponent fit has too few SNR points or samples."""
    pass


def _draw_link(rng: np.random.Generator, shape, snr: float, alpha, beta):
    """True channel plus current and delayed estimates; alpha/beta broadcast over leading slot axis.

    The current estimate and its error are drawn independently and H = Ĥ + E_c,
    so E|H|^2 = 1 + P^-alpha. The delayed error is independent of both.
    """
    estimate = complex_gaussian(rng, shape)
    current_var = snr ** (-np.asarray(alpha, dtype=float))
    delayed_var = snr ** (-np.asarray(beta, dtype=float))
    if np.ndim(current_var):
        current_var = current_var[:, None, None]
        delayed_var = delayed_var[:, None, None]
    current_error = complex_gaussian(rng, shape, current_var)
    delayed_error = complex_gaussian(rng, shape, delayed_var)
    h = estimate + current_error
    return h, estimate, h - delayed_error


def _check_inputs(t_slots: int, snr: float, eta: int) -> None:
    if snr <= 1:
        raise ValueError(f"snr={snr} must be > 1")
    if eta < 1 or (t_slots > 1 and eta >= t_slots):
        raise ValueError(f"eta={eta} must satisfy 1 <= eta < T={t_slots}")


def generate_block(
    cfg: AntennaConfig,
    q: QualityExponents,
    t_slots: int,
    snr: float,
    seed: int,
    eta: int = 1,
) -> ChannelBlock:
    """T slots of i.i.d. channels and estimates, deterministic in seed."""
    _check_inputs(t_slots, snr, eta)
    rng = np.random.default_rng(seed)
    alpha, beta = q.slot_exponents(t_slots)
    shape = (t_slots, cfg.n_rx, cfg.m_tx)

    drawn = {}
    for link in links_for(cfg.kind):
        user = receiver_of(link)
        drawn[link] = _draw_link(rng, shape, snr, alpha[user], beta[user])

    slots = tuple(
        ChannelSlot(
            h_true={link: drawn[link][0][t] for link in drawn},
            h_current={link: drawn[link][1][t] for link in drawn},
            h_delayed={link: drawn[link][2][t] for link in drawn},
            slot_index=t,
            snr=float(snr),
            alpha=(float(alpha[0, t]), float(alpha[1, t])),
            beta=(float(beta[0, t]), float(beta[1, t])),
            delayed_available_at=t + eta,
        )
        for t in range(t_slots)
    )
    return ChannelBlock(cfg=cfg, q=q, seed=seed, snr=float(snr), eta=eta, slots=slots)


def redraw_slot(rng: np.random.Generator, cfg: AntennaConfig, slot: ChannelSlot) -> ChannelSlot:
    """Fresh realization for one slot with the same exponents."""
    shape = (cfg.n_rx, cfg.m_tx)
    drawn = {}
    for link in links_for(cfg.kind):
        user = receiver_of(link)
        drawn[link] = _draw_link(rng, shape, slot.snr, slot.alpha[user], slot.beta[user])
    return ChannelSlot(
        h_true={link: d[0] for link, d in drawn.items()},
        h_current={link: d[1] for link, d in drawn.items()},
        h_delayed={link: d[2] for link, d in drawn.items()},
        slot_index=slot.slot_index,
        snr=slot.snr,
        alpha=slot.alpha,
        beta=slot.beta,
        delayed_available_at=slot.delayed_available_at,
    )


def error_samples(block: ChannelBlock, user: int, delayed: bool = False) -> np.ndarray:
    """Per-slot mean squared entry of the estimation error on the links into a receiver."""
    links = [link for link in links_for(block.cfg.kind) if receiver_of(link) == user]
    samples = []
    for slot in block:
        errors = [slot.delayed_error(link) if delayed else slot.current_error(link) for link in links]
        samples.append(np.mean([np.mean(np.abs(e) ** 2) for e in errors]))
    return np.asarray(samples)


def measured_exponent(samples, snr_ladder, min_samples: int = MIN_SAMPLES) -> float:
    """Least-squares slope of -log(mean squared error) against log P."""
    if len(snr_ladder) < 2 or len(samples) != len(snr_ladder):
        raise InsufficientSamplesError(f"need one sample set per SNR and >= 2 SNR points, got {len(snr_ladder)}")
    means = []
    for p, s in zip(snr_ladder, samples):
        s = np.asarray(s, dtype=float)
        if s.size < min_samples:
            raise InsufficientSamplesError(f"{s.size} samples at P={p:g}, need {min_samples}")
        means.append(s.mean())
    fit = linregress(np.log(np.asarray(snr_ladder, dtype=float)), -np.log(np.asarray(means)))
    return float(fit.slope)


def dump_block(block: ChannelBlock, path) -> Path:
    """Write the block as .npz with a JSON header."""
    path = Path(path)
    q = block.q
    header = BlockHeader(
        kind=block.cfg.kind,
        m_tx=block.cfg.m_tx,
        n_rx=block.cfg.n_rx,
        alpha_avg=q.alpha_avg,
        beta_avg=q.beta_avg,
        alpha_seq=[list(s) for s in q.alpha_seq] if q.has_sequences else None,
        beta_seq=[list(s) for s in q.beta_seq] if q.has_sequences else None,
        seed=block.seed,
        snr=block.snr,
        eta=block.eta,
        t_slots=len(block),
    )
    arrays = {"header": np.array(header.model_dump_json())}
    for link in links_for(block.cfg.kind):
        arrays[f"true_{link}"] = np.stack([s.h_true[link] for s in block])
        arrays[f"current_{link}"] = np.stack([s.h_current[link] for s in block])
        arrays[f"delayed_{link}"] = np.stack([s.h_delayed[link] for s in block])
    arrays["alpha"] = np.array([s.alpha for s in block]).T
    arrays["beta"] = np.array([s.beta for s in block]).T
    with path.open("wb") as f:
        np.savez_compressed(f, **arrays)
    logger.info("  wrote channel block %s (%s slots)", path, len(block))
    return path


def load_block(path) -> ChannelBlock:
    with np.load(Path(path)) as data:
        header = BlockHeader.model_validate(json.loads(str(data["header"])))
        cfg = AntennaConfig(m_tx=header.m_tx, n_rx=header.n_rx, kind=header.kind)
        q = QualityExponents(
            alpha_avg=header.alpha_avg,
            beta_avg=header.beta_avg,
            alpha_seq=header.alpha_seq,
            beta_seq=header.beta_seq,
        )
        links = links_for(cfg.kind)
        arrays = {key: data[key] for key in data.files}

    alpha, beta = arrays["alpha"], arrays["beta"]
    slots = tuple(
        ChannelSlot(
            h_true={link: arrays[f"true_{link}"][t] for link in links},
            h_current={link: arrays[f"current_{link}"][t] for link in links},
            h_delayed={link: arrays[f"delayed_{link}"][t] for link in links},
            slot_index=t,
            snr=header.snr,
            alpha=(float(alpha[0, t]), float(alpha[1, t])),
            beta=(float(beta[0, t]), float(beta[1, t])),
            delayed_available_at=t + header.eta,
        )
        for t in range(header.t_slots)
    )
    return ChannelBlock(cfg=cfg, q=q, seed=header.seed, snr=header.snr, eta=header.eta, slots=slots)
