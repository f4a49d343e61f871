"""Finite-SNR run of the phase-Markov scheme.

Each phase precodes over T slots, reconstructs the interference each receiver
saw from delayed CSIT, quantizes it for the next phase's common symbols and
checks decodability as a stacked MIMO multiple-access channel with log-det
bounds. Delivered rates are regressed against log2 P to estimate DoF.
"""
import dataclasses
import logging
from typing import Optional

import numpy as np
from scipy.linalg import block_diag, null_space
from scipy.stats import linregress

from models.channel import EXPONENT_TOL, AntennaConfig, ChannelKind, QualityExponents
from models.config import DEFAULT_BACKOFF_BITS
from models.plan import PhasePlan
from models.report import MacCheck, SimReport, SnrPoint
from models.signal import ChannelBlock, ChannelSlot, InterferenceRecord, SlotSignal
from services.channel_process import generate_block, redraw_slot
from services.scheme_plan import build_phase_plan, plan_for_point
from utils.numeric import (
    allocate_levels,
    complex_gaussian,
    gaussian_quantizer_mse,
    mutual_information,
    positive_part,
    uniform_quantize,
    unit_columns,
)

logger = logging.getLogger(__name__)

MIN_TRIALS = 20
MIN_FIT_POINTS = 3
MIN_DECADES = 3.0
MAX_REDRAWS = 100

PRIVATE_GROUPS = (("a", "a_prime"), ("b", "b_prime"))


class RankDeficientError(Exception):
    """Raised when a current channel estimate has rank below N."""
    pass


class InsufficientLadderError(ValueError):
    """Raised when the SNR ladder cannot support a slope fit."""
    pass


def _receiver_links(kind: ChannelKind, receiver: int) -> tuple[tuple[str, ...], str, str]:
    """(common links indexed like precoder_common, own private link, interfering link) at a receiver."""
    if kind == ChannelKind.IC:
        if receiver == 0:
            return ("11", "12"), "11", "12"
        return ("21", "22"), "22", "21"
    link = str(receiver + 1)
    return (link,), link, link


def _h(channels: dict, link: str, m: int) -> np.ndarray:
    return channels[link][:, :m]


def make_precoders(slot: ChannelSlot, cfg: AntennaConfig, rng: Optional[np.random.Generator] = None) -> SlotSignal:
    """Zero-forcing and random precoders for one slot, without powers.

    U spans the null space of the current estimate of the link user 1's streams
    must avoid (BC: H2, IC: H21); V the same for user 2 (BC: H1, IC: H12).
    """
    if not cfg.needs_csit:
        raise ValueError(f"precoding needs N < min(M, 2N); got M={cfg.m_tx}, N={cfg.n_rx}")
    rng = rng if rng is not None else np.random.default_rng()
    m, n = cfg.effective_m, cfg.n_rx

    avoided = ("21", "12") if cfg.kind == ChannelKind.IC else ("2", "1")
    zero_forcing = []
    for link in avoided:
        estimate = _h(slot.h_current, link, m)
        if np.linalg.matrix_rank(estimate) < n:
            raise RankDeficientError(f"slot {slot.slot_index}: current estimate of link {link} has rank < {n}")
        basis = null_space(estimate)
        if basis.shape[1] != m - n:
            raise RankDeficientError(f"slot {slot.slot_index}: null space of link {link} has dimension {basis.shape[1]}")
        zero_forcing.append(basis)

    n_common = 2 if cfg.kind == ChannelKind.IC else 1
    common = tuple(unit_columns(complex_gaussian(rng, (m, m))) for _ in range(n_common))
    return SlotSignal(
        precoder_common=common,
        precoder_zf_a=zero_forcing[0],
        precoder_rand_a=unit_columns(complex_gaussian(rng, (m, n))),
        precoder_zf_b=zero_forcing[1],
        precoder_rand_b=unit_columns(complex_gaussian(rng, (m, n))),
    )


def _stream_powers(signal: SlotSignal, plan: PhasePlan, t: int, snr: float, last_phase: bool) -> dict[str, float]:
    """Per-stream linear powers; each transmitter is scaled to total power P."""
    width = {
        "a": signal.precoder_zf_a.shape[1],
        "a_prime": signal.precoder_rand_a.shape[1],
        "b": signal.precoder_zf_b.shape[1],
        "b_prime": signal.precoder_rand_b.shape[1],
    }
    group = {}
    for name in width:
        live = not last_phase and plan.rate_table[name][t] > EXPONENT_TOL
        group[name] = snr ** plan.power_table[name][t] if live else 0.0

    if len(signal.precoder_common) == 2:
        transmitters = (("c1", "a", "a_prime"), ("c2", "b", "b_prime"))
    else:
        transmitters = (("c1", "a", "a_prime", "b", "b_prime"),)

    powers = {}
    for common, *private in transmitters:
        scale = snr / (snr + sum(group[name] for name in private))
        powers[common] = scale * snr / signal.precoder_common[int(common[1]) - 1].shape[1]
        for name in private:
            powers[name] = scale * group[name] / width[name]
    return powers


def assign_streams(
    signal: SlotSignal,
    plan: PhasePlan,
    t: int,
    snr: float,
    rng: np.random.Generator,
    last_phase: bool = False,
) -> SlotSignal:
    """Attach powers and Gaussian symbols for slot t of the plan. The last phase of a chain sends common streams only."""
    powers = _stream_powers(signal, plan, t, snr, last_phase)
    symbols = {
        f"c{j + 1}": complex_gaussian(rng, (w.shape[1],), powers[f"c{j + 1}"])
        for j, w in enumerate(signal.precoder_common)
    }
    for name, precoder in (
        ("a", signal.precoder_zf_a),
        ("a_prime", signal.precoder_rand_a),
        ("b", signal.precoder_zf_b),
        ("b_prime", signal.precoder_rand_b),
    ):
        symbols[name] = complex_gaussian(rng, (precoder.shape[1],), powers[name])
    return dataclasses.replace(signal, powers=powers, symbols=symbols)


def phase_signals(
    block: ChannelBlock,
    plan: PhasePlan,
    rng: np.random.Generator,
    last_phase: bool = False,
) -> tuple[ChannelBlock, list[SlotSignal], int]:
    """Precoded signals for every slot, re-drawing slots whose estimates are rank deficient.

    Returns the (possibly updated) block, the signals and the number of re-draws.
    """
    cfg = block.cfg
    slots = list(block.slots)
    signals = []
    redraws = 0
    for t, slot in enumerate(slots):
        for _ in range(MAX_REDRAWS):
            try:
                signal = make_precoders(slot, cfg, rng)
                break
            except RankDeficientError as e:
                logger.warning("  %s; re-drawing", e)
                redraws += 1
                slot = redraw_slot(rng, cfg, slot)
        else:
            raise RankDeficientError(f"slot {t}: still rank deficient after {MAX_REDRAWS} re-draws")
        slots[t] = slot
        signals.append(assign_streams(signal, plan, t, block.snr, rng, last_phase))
    if redraws:
        block = dataclasses.replace(block, slots=tuple(slots))
    return block, signals, redraws


def reconstruct_and_quantize(block: ChannelBlock, plan: PhasePlan, signals: list[SlotSignal]) -> list[InterferenceRecord]:
    """Rebuild each receiver's interference from delayed CSIT and quantize it.

    Runs once the phase is over, when every delayed estimate of the phase has
    arrived. Slot bit budgets are N (delta_t - alpha_t)^+ log2 P; what a slot
    cannot spend carries to the next slot of the same receiver.
    """
    m, n = block.cfg.effective_m, block.cfg.n_rx
    budgets = plan.quant_slot_budget * np.log2(block.snr)
    carry = [0.0, 0.0]
    records = []
    for t, (slot, signal) in enumerate(zip(block, signals)):
        for r in range(2):
            _, _, cross = _receiver_links(block.cfg.kind, r)
            x_other = signal.private_vector(1 - r)
            h_true = _h(slot.h_true, cross, m)
            h_delayed = _h(slot.h_delayed, cross, m)
            iota_est = h_delayed @ x_other

            entry_var = np.real(np.diag(h_delayed @ signal.private_covariance(1 - r) @ h_delayed.conj().T))
            sigma = np.sqrt(np.tile(np.maximum(entry_var, 0.0) / 2.0, 2))
            available = budgets[r, t] + carry[r]
            levels = allocate_levels(available, 2 * n)
            used = float(np.log2(levels).sum())
            carry[r] = available - used

            values = np.concatenate([iota_est.real, iota_est.imag])
            quantized, overload = uniform_quantize(values, sigma, levels)
            mse = gaussian_quantizer_mse(sigma, levels)
            iota_quantized = quantized[:n] + 1j * quantized[n:]
            records.append(InterferenceRecord(
                receiver=r,
                slot_index=t,
                iota_true=h_true @ x_other,
                iota_est=iota_est,
                iota_quantized=iota_quantized,
                quant_noise_power=float(np.sum(np.abs(iota_est - iota_quantized) ** 2)),
                error_variance=mse[:n] + mse[n:],
                bits_budget=float(budgets[r, t]),
                bits_used=used,
                overloads=int(overload.sum()),
                levels=levels,
            ))
    overloads = sum(record.overloads for record in records)
    if overloads:
        logger.debug("  %s quantizer overloads at P=%.3g", overloads, block.snr)
    return records


def _new_bits(snr: float, backoff_bits: Optional[float]) -> float:
    c0 = DEFAULT_BACKOFF_BITS if backoff_bits is None else backoff_bits
    return positive_part(np.log2(snr) - c0)


def designed_rates(
    plan: PhasePlan,
    snr: float,
    receiver: int,
    quant_payload: float = 0.0,
    backoff_bits: Optional[float] = None,
    last_phase: bool = False,
) -> tuple[float, float]:
    """(private, common) bits per phase a receiver must decode.

    New information is backed off to r (log2 P - c0)^+; the quantization
    payload of the previous phase is carried exactly.
    """
    new_bits = _new_bits(snr, backoff_bits)
    if last_phase:
        return 0.0, quant_payload
    private = sum(float(plan.rate_table[name].sum()) for name in PRIVATE_GROUPS[receiver]) * new_bits
    common = quant_payload + plan.t_slots * max(plan.delta_com, 0.0) * new_bits
    return private, common


def designed_common_split(
    plan: PhasePlan,
    snr: float,
    quant_payload: tuple[float, float] = (0.0, 0.0),
    backoff_bits: Optional[float] = None,
    last_phase: bool = False,
) -> tuple[float, float]:
    """Bits per phase on the IC common streams (c1, c2).

    quant_payload holds the quantization bits of the interference seen at each
    receiver. Transmitter 1 forwards the bits for receiver 2 and transmitter 2
    those for receiver 1, each adding its share of new common information.
    """
    forwarded = (quant_payload[1], quant_payload[0])
    if last_phase:
        return forwarded
    new_bits = _new_bits(snr, backoff_bits)
    return tuple(
        float(forwarded[j] + plan.t_slots * plan.ic_new_common[j] * new_bits) for j in range(2)
    )


def mac_feasibility(
    block: ChannelBlock,
    plan: PhasePlan,
    signals: list[SlotSignal],
    records: list[InterferenceRecord],
    receiver: int,
    quant_payload: tuple[float, float] = (0.0, 0.0),
    backoff_bits: Optional[float] = None,
    last_phase: bool = False,
    phase_index: int = 0,
) -> MacCheck:
    """Log-det bounds of the stacked MAC seen by one receiver over a phase.

    Top rows are the receiver's output minus its own quantized interference;
    bottom rows are the other receiver's quantized interference, which depends
    on this receiver's private streams. Bottom entries quantized with a single
    level carry nothing and are dropped. Bounds are summed over the slots.

    For the IC, c1 and c2 come from different transmitters and get their own
    bounds: each one alone given everything else, and the private streams plus
    that one given the other.
    """
    cfg = block.cfg
    m, n = cfg.effective_m, cfg.n_rx
    common_links, own, cross = _receiver_links(cfg.kind, receiver)
    _, _, other_cross = _receiver_links(cfg.kind, 1 - receiver)
    by_slot = {(record.slot_index, record.receiver): record for record in records}
    split = cfg.kind == ChannelKind.IC

    bound_private = bound_common = bound_sum = noise_power = 0.0
    bound_alone = np.zeros(len(common_links))
    bound_joint = np.zeros(len(common_links))
    for t, (slot, signal) in enumerate(zip(block, signals)):
        precoder, p_private = signal.private_streams(receiver)
        live = p_private > 0
        precoder, p_private = precoder[:, live], p_private[live]

        common_gain = np.hstack([
            _h(slot.h_true, link, m) @ signal.precoder_common[j] for j, link in enumerate(common_links)
        ])
        p_common = np.concatenate([signal.common_streams(j)[1] for j in range(len(common_links))])
        stream_of = np.concatenate([
            np.full(signal.precoder_common[j].shape[1], j) for j in range(len(common_links))
        ])

        residual = _h(slot.h_true, cross, m) - _h(slot.h_delayed, cross, m)
        top_noise = np.eye(n) + residual @ signal.private_covariance(1 - receiver) @ residual.conj().T
        own_record = by_slot.get((t, receiver))
        if own_record is not None:
            top_noise = top_noise + np.diag(own_record.error_variance)

        bottom_private = _h(slot.h_delayed, other_cross, m) @ precoder
        bottom_noise = np.ones(n)
        other_record = by_slot.get((t, 1 - receiver))
        if other_record is None:
            bottom_private = np.zeros_like(bottom_private)
        else:
            informative = (other_record.levels[:n] > 1) | (other_record.levels[n:] > 1)
            bottom_private = np.where(informative[:, None], bottom_private, 0.0)
            bottom_noise = np.where(informative, other_record.error_variance, 1.0)

        noise = block_diag(top_noise, np.diag(bottom_noise))
        gain_private = np.vstack([_h(slot.h_true, own, m) @ precoder, bottom_private])
        gain_common = np.vstack([common_gain, np.zeros((n, common_gain.shape[1]))])

        if p_private.size:
            bound_private += mutual_information(gain_private, p_private, noise)
        bound_common += mutual_information(gain_common, p_common, noise)
        bound_sum += mutual_information(
            np.hstack([gain_private, gain_common]), np.concatenate([p_private, p_common]), noise)
        if split:
            for j in range(len(common_links)):
                cols = stream_of == j
                bound_alone[j] += mutual_information(gain_common[:, cols], p_common[cols], noise)
                bound_joint[j] += mutual_information(
                    np.hstack([gain_private, gain_common[:, cols]]), np.concatenate([p_private, p_common[cols]]), noise)
        noise_power += float(np.real(np.trace(top_noise))) / n

    private, common = designed_rates(plan, block.snr, receiver, float(sum(quant_payload)), backoff_bits, last_phase)
    designed_split = bound_split = bound_private_split = ()
    if split:
        designed_split = designed_common_split(plan, block.snr, quant_payload, backoff_bits, last_phase)
        common = float(sum(designed_split))
        bound_split = tuple(float(v) for v in bound_alone)
        bound_private_split = tuple(float(v) for v in bound_joint)
    return MacCheck(
        receiver=receiver,
        phase_index=phase_index,
        designed_private=private,
        designed_common=common,
        bound_private=bound_private,
        bound_common=bound_common,
        bound_sum=bound_sum,
        effective_noise=noise_power / len(block),
        designed_split=designed_split,
        bound_split=bound_split,
        bound_private_split=bound_private_split,
    )


def _term_power(h: np.ndarray, precoder: np.ndarray, powers) -> float:
    gain = h @ precoder
    return float(np.sum(np.abs(gain) ** 2 * np.asarray(powers, dtype=float))) / h.shape[0]


def received_term_powers(block: ChannelBlock, signals: list[SlotSignal], receiver: int = 0) -> dict[str, np.ndarray]:
    """Average received power per antenna of each term at one receiver, per slot."""
    cfg = block.cfg
    m = cfg.effective_m
    common_links, own, cross = _receiver_links(cfg.kind, receiver)
    zf_name, rand_name = PRIVATE_GROUPS[receiver]
    terms = {name: [] for name in ("common", "private_zf", "private_rand", "noise", "interference", "delayed_residual")}
    for slot, signal in zip(block, signals):
        zf = signal.precoder_zf_a if receiver == 0 else signal.precoder_zf_b
        rand = signal.precoder_rand_a if receiver == 0 else signal.precoder_rand_b
        other, other_powers = signal.private_streams(1 - receiver)
        h_own = _h(slot.h_true, own, m)
        h_cross = _h(slot.h_true, cross, m)

        terms["common"].append(sum(
            _term_power(_h(slot.h_true, link, m), *signal.common_streams(j)) for j, link in enumerate(common_links)))
        terms["private_zf"].append(_term_power(h_own, zf, signal.powers[zf_name]))
        terms["private_rand"].append(_term_power(h_own, rand, signal.powers[rand_name]))
        terms["noise"].append(1.0)
        terms["interference"].append(_term_power(h_cross, other, other_powers))
        terms["delayed_residual"].append(_term_power(h_cross - _h(slot.h_delayed, cross, m), other, other_powers))
    return {name: np.asarray(values) for name, values in terms.items()}


def _check_ladder(snr_ladder) -> np.ndarray:
    ladder = np.sort(np.asarray(snr_ladder, dtype=float))
    if ladder.size < MIN_FIT_POINTS:
        raise InsufficientLadderError(f"SNR ladder needs >= {MIN_FIT_POINTS} points, got {ladder.size}")
    if np.any(ladder <= 1):
        raise ValueError("every SNR must be > 1 (linear scale)")
    if np.log10(ladder[-1] / ladder[0]) < MIN_DECADES - 1e-9:
        raise InsufficientLadderError(
            f"SNR ladder spans {np.log10(ladder[-1] / ladder[0]):.2f} decades, need {MIN_DECADES:g}")
    return ladder


def fit_slopes(points: list[SnrPoint]) -> tuple[tuple[float, float], tuple[float, float], tuple[float, ...]]:
    """OLS of achieved bits/slot against log2 P per user, dropping the lowest point when four or more exist."""
    used = sorted(points, key=lambda p: p.snr)
    if len(used) > MIN_FIT_POINTS:
        used = used[1:]
    x = np.log2([p.snr for p in used])
    slopes, errors = [], []
    for user in range(2):
        fit = linregress(x, [p.achieved_rate[user] for p in used])
        slopes.append(float(fit.slope))
        errors.append(float(fit.stderr))
    return tuple(slopes), tuple(errors), tuple(p.snr for p in used)


def _new_common(
    plan: PhasePlan, pair: list[MacCheck], payload: tuple[float, float],
) -> tuple[np.ndarray, np.ndarray, Optional[tuple[float, ...]]]:
    """(achieved, designed) new common bits per user in one phase, plus the IC split both receivers decode.

    BC common information is shared by (omega, 1 - omega); IC new information
    on c_j belongs to user j.
    """
    if plan.kind == ChannelKind.IC:
        split = tuple(min(caps) for caps in zip(*(check.common_split_cap() for check in pair)))
        forwarded = (payload[1], payload[0])
        achieved = [max(split[j] - forwarded[j], 0.0) for j in range(2)]
        designed = [max(pair[0].designed_split[j] - forwarded[j], 0.0) for j in range(2)]
        return np.asarray(achieved), np.asarray(designed), split
    shares = np.array([plan.omega, 1.0 - plan.omega])
    total = sum(payload)
    common = min(check.common_cap() for check in pair)
    return (
        shares * max(common - total, 0.0),
        shares * max(pair[0].designed_common - total, 0.0),
        None,
    )


def _run_point(
    cfg: AntennaConfig,
    q: QualityExponents,
    plan: PhasePlan,
    snr: float,
    trials: int,
    seed_seq: np.random.SeedSequence,
    backoff_bits: float,
    eta: int,
) -> SnrPoint:
    chains = np.array_split(np.arange(trials), max(1, trials // plan.s_phases))
    phase_seeds = seed_seq.spawn(trials)

    delivered = np.zeros(2)
    designed = np.zeros(2)
    checks: list[MacCheck] = []
    distortions: list[float] = []
    phase_distortions: list[float] = []
    budget_per_rx: list[float] = []
    used_per_rx: list[float] = []
    overloads = redraws = decodable = 0

    for chain in chains:
        payload = (0.0, 0.0)
        chain_feasible = []
        for position, index in enumerate(chain):
            last = position == len(chain) - 1
            channel_seed, signal_seed = phase_seeds[index].spawn(2)
            block = generate_block(cfg, q, plan.t_slots, snr, int(channel_seed.generate_state(1)[0]), eta)
            rng = np.random.default_rng(signal_seed)
            block, signals, phase_redraws = phase_signals(block, plan, rng, last_phase=last)
            redraws += phase_redraws
            records = [] if last else reconstruct_and_quantize(block, plan, signals)

            pair = [
                mac_feasibility(block, plan, signals, records, r, payload, backoff_bits, last, int(index))
                for r in range(2)
            ]
            new_achieved, new_designed, split = _new_common(plan, pair, payload)
            common = sum(split) if split is not None else min(check.common_cap() for check in pair)
            for r, check in enumerate(pair):
                _, private = check.achieved(common, split)
                delivered[r] += private + new_achieved[r]
                designed[r] += check.designed_private + new_designed[r]
            checks.extend(pair)
            chain_feasible.append(all(check.feasible for check in pair))

            if records:
                phase_noise = [record.quant_noise_power for record in records]
                distortions.extend(phase_noise)
                phase_distortions.append(float(np.mean(phase_noise)))
                overloads += sum(record.overloads for record in records)
                for r in range(2):
                    mine = [record for record in records if record.receiver == r]
                    budget_per_rx.append(sum(record.bits_budget for record in mine))
                    used_per_rx.append(sum(record.bits_used for record in mine))
            payload = tuple(sum(record.bits_used for record in records if record.receiver == r) for r in range(2))

        # backward decoding: a phase needs its own margins and every later phase of the chain
        ok = True
        for feasible in reversed(chain_feasible):
            ok = ok and feasible
            decodable += int(ok)

    slots = trials * plan.t_slots
    new_bits = positive_part(np.log2(snr) - backoff_bits)
    user_checks = [[c for c in checks if c.receiver == r] for r in range(2)]
    busy_checks = [[c for c in user_checks[r] if c.designed_private > 0] or user_checks[r] for r in range(2)]
    shortfall = np.asarray(budget_per_rx) - np.asarray(used_per_rx)
    point = SnrPoint(
        snr=float(snr),
        designed_rate=tuple(float(v) for v in designed / slots),
        achieved_rate=tuple(float(v) for v in delivered / slots),
        private_designed=tuple(float(b * new_bits) for b in plan.private_budget),
        margin_min=tuple(min(c.margin_min for c in user_checks[r]) for r in range(2)),
        feasible_fraction=tuple(float(np.mean([c.feasible for c in user_checks[r]])) for r in range(2)),
        decodable_fraction=decodable / trials,
        distortion=float(np.mean(distortions)) if distortions else 0.0,
        max_distortion=max(phase_distortions, default=0.0),
        bits_budget=float(np.mean(budget_per_rx)) if budget_per_rx else 0.0,
        bits_used=float(np.mean(used_per_rx)) if used_per_rx else 0.0,
        overloads=overloads,
        effective_noise=tuple(float(np.mean([c.effective_noise for c in busy_checks[r]])) for r in range(2)),
        phases=trials,
        redraws=redraws,
        max_bit_shortfall=float(shortfall.max()) if shortfall.size else 0.0,
        checks=tuple(checks),
    )
    logger.info(
        "  P=%.3g: achieved (%.3f, %.3f) bits/slot, feasible (%.0f%%, %.0f%%), distortion %.3g",
        snr, *point.achieved_rate, 100 * point.feasible_fraction[0], 100 * point.feasible_fraction[1], point.distortion,
    )
    if redraws:
        logger.warning("  P=%.3g: %s rank-deficient slots re-drawn", snr, redraws)
    return point


def simulate_dof(
    cfg: AntennaConfig,
    q: QualityExponents,
    target,
    snr_ladder,
    trials: int,
    seed: int,
    *,
    delta_bar: Optional[float] = None,
    omega: Optional[float] = None,
    t_slots: int = 8,
    s_phases: int = 25,
    backoff_bits: Optional[float] = None,
    eta: int = 1,
) -> SimReport:
    """Run the scheme over an SNR ladder and regress delivered rates against log2 P.

    Either target or delta_bar (with omega, default 0.5) selects the operating point.
    """
    ladder = _check_ladder(snr_ladder)
    if trials < MIN_TRIALS:
        raise ValueError(f"trials={trials} below {MIN_TRIALS} phases per SNR point")
    if s_phases < 2:
        raise ValueError(f"s_phases={s_phases} must be >= 2")

    if delta_bar is not None:
        plan = plan_for_point(cfg, q, delta_bar, 0.5 if omega is None else omega, t_slots, s_phases, target=None)
    elif target is not None:
        plan = build_phase_plan(cfg, q, target, t_slots, s_phases)
    else:
        raise ValueError("either target or delta_bar is required")
    c0 = DEFAULT_BACKOFF_BITS if backoff_bits is None else float(backoff_bits)

    logger.info("  simulating %s M=%s N=%s over %s SNR points, %s phases each", cfg.kind.value, cfg.m_tx, cfg.n_rx, len(ladder), trials)
    seeds = np.random.SeedSequence(seed).spawn(len(ladder))
    points = [_run_point(cfg, q, plan, float(snr), trials, s, c0, eta) for snr, s in zip(ladder, seeds)]
    d_hat, stderr, fit_snr = fit_slopes(points)

    return SimReport(
        kind=cfg.kind,
        m_tx=cfg.m_tx,
        n_rx=cfg.n_rx,
        target=plan.target,
        dof_point=plan.dof_point,
        delta_bar=plan.delta_bar,
        omega=plan.omega,
        backoff_bits=c0,
        points=tuple(points),
        d_hat=d_hat,
        stderr=stderr,
        fit_snr=fit_snr,
    )
