import numpy as np
import pytest

from models.channel import AntennaConfig, ChannelKind, QualityExponents
from models.report import MacCheck, SnrPoint
from models.signal import ChannelSlot
from services.channel_process import generate_block, measured_exponent
from services.phase_markov_sim import (
    InsufficientLadderError,
    RankDeficientError,
    designed_common_split,
    designed_rates,
    fit_slopes,
    mac_feasibility,
    make_precoders,
    phase_signals,
    received_term_powers,
    reconstruct_and_quantize,
    simulate_dof,
)
from services.scheme_plan import build_phase_plan, plan_for_point

LADDER = [1e3, 1e4, 1e5, 1e6]


def _q(alpha, beta=(1.0, 1.0)):
    return QualityExponents(alpha_avg=alpha, beta_avg=beta)


def _slot(current: dict) -> ChannelSlot:
    return ChannelSlot(
        h_true=current,
        h_current=current,
        h_delayed=current,
        slot_index=0,
        snr=1e3,
        alpha=(0.5, 0.5),
        beta=(1.0, 1.0),
        delayed_available_at=1,
    )


@pytest.fixture
def bc32():
    return AntennaConfig(3, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def _run_phase(cfg, q, plan, snr, seed=0):
    block = generate_block(cfg, q, plan.t_slots, snr, seed)
    block, signals, _ = phase_signals(block, plan, np.random.default_rng(seed + 1))
    records = reconstruct_and_quantize(block, plan, signals)
    return block, signals, records


def test_zero_forcing_miso_example(rng):
    cfg = AntennaConfig(2, 1)
    slot = _slot({"1": np.array([[0.0, 1.0]], dtype=complex), "2": np.array([[1.0, 0.0]], dtype=complex)})
    signal = make_precoders(slot, cfg, rng)
    assert np.abs(signal.precoder_zf_a[:, 0]) == pytest.approx([0.0, 1.0], abs=1e-12)
    assert np.abs(signal.precoder_zf_b[:, 0]) == pytest.approx([1.0, 0.0], abs=1e-12)


def test_zero_forcing_in_null_space(bc32, rng):
    block = generate_block(bc32, _q((0.5, 0.5)), 20, 1e4, seed=1)
    for slot in block:
        signal = make_precoders(slot, bc32, rng)
        h2, h1 = slot.h_current["2"], slot.h_current["1"]
        assert np.linalg.norm(h2 @ signal.precoder_zf_a) <= 1e-9 * np.linalg.norm(h2)
        assert np.linalg.norm(h1 @ signal.precoder_zf_b) <= 1e-9 * np.linalg.norm(h1)
        for precoder in (signal.precoder_zf_a, signal.precoder_rand_a, signal.precoder_rand_b, *signal.precoder_common):
            assert np.linalg.norm(precoder, axis=0) == pytest.approx(np.ones(precoder.shape[1]), abs=1e-12)
        assert signal.precoder_zf_a.shape == (3, 1)
        assert signal.precoder_rand_a.shape == (3, 2)
        assert signal.precoder_common[0].shape == (3, 3)


def test_zero_forcing_interference_channel(rng):
    cfg = AntennaConfig(3, 2, ChannelKind.IC)
    block = generate_block(cfg, _q((0.5, 0.5)), 5, 1e4, seed=2)
    for slot in block:
        signal = make_precoders(slot, cfg, rng)
        assert np.linalg.norm(slot.h_current["21"] @ signal.precoder_zf_a) < 1e-9
        assert np.linalg.norm(slot.h_current["11"] @ signal.precoder_zf_a) > 1e-3
        assert np.linalg.norm(slot.h_current["12"] @ signal.precoder_zf_b) < 1e-9
        assert len(signal.precoder_common) == 2


def test_rank_deficient_estimate(rng):
    cfg = AntennaConfig(2, 1)
    slot = _slot({"1": np.array([[0.0, 1.0]], dtype=complex), "2": np.zeros((1, 2), dtype=complex)})
    with pytest.raises(RankDeficientError):
        make_precoders(slot, cfg, rng)


def test_precoders_need_csit_regime(rng):
    cfg = AntennaConfig(2, 2)
    block = generate_block(cfg, _q((0.5, 0.5)), 1, 1e3, seed=0)
    with pytest.raises(ValueError):
        make_precoders(block[0], cfg, rng)


def test_zero_forcing_leakage_scales_with_alpha():
    cfg = AntennaConfig(2, 1)
    q = _q((0.5, 0.5))
    ladder = [1e2, 1e4, 1e6]
    rng = np.random.default_rng(3)
    samples = []
    for p in ladder:
        block = generate_block(cfg, q, 1000, p, seed=4)
        leak = [np.sum(np.abs(slot.h_true["2"] @ make_precoders(slot, cfg, rng).precoder_zf_a) ** 2) for slot in block]
        samples.append(np.asarray(leak))
        assert 0.3 * p ** -0.5 <= np.mean(leak) <= 3 * p ** -0.5
    assert measured_exponent(samples, ladder) == pytest.approx(0.5, abs=0.07)


def test_stream_powers_sum_to_snr(bc32):
    q = _q((1.0, 1.0))
    plan = plan_for_point(bc32, q, 1.0, 0.5, t_slots=2, s_phases=5)
    block = generate_block(bc32, q, 2, 1e4, seed=0)
    _, signals, _ = phase_signals(block, plan, np.random.default_rng(0))
    powers = signals[0].powers
    assert powers["a_prime"] == 0.0 and powers["b_prime"] == 0.0
    assert powers["a"] == pytest.approx(1e4 / 3)
    assert 3 * powers["c1"] + powers["a"] + powers["b"] == pytest.approx(1e4)

    _, last, _ = phase_signals(block, plan, np.random.default_rng(0), last_phase=True)
    assert last[0].powers["a"] == 0.0
    assert 3 * last[0].powers["c1"] == pytest.approx(1e4)


def test_no_quantization_budget_sends_nothing(bc32):
    q = _q((0.5, 0.5))
    plan = build_phase_plan(bc32, q, "Bstar", t_slots=4, s_phases=5)
    _, _, records = _run_phase(bc32, q, plan, 1e4)
    assert len(records) == 8
    for record in records:
        assert record.bits_used == 0
        assert np.all(record.levels == 1)
        assert np.allclose(record.iota_quantized, 0)


def test_quantization_bits_follow_budget(bc32):
    q = _q((0.8, 0.8))
    plan = build_phase_plan(bc32, q, "Estar", t_slots=8, s_phases=5)
    _, _, records = _run_phase(bc32, q, plan, 1e4)
    assert records[0].bits_budget == pytest.approx(2 * 0.2 * np.log2(1e4))
    assert records[0].bits_budget == pytest.approx(5.315, abs=1e-3)
    for r in range(2):
        mine = [record for record in records if record.receiver == r]
        budget = sum(record.bits_budget for record in mine)
        used = sum(record.bits_used for record in mine)
        assert budget - 1.0 < used <= budget + 1e-9
    assert np.mean([record.quant_noise_power for record in records]) <= 10


def test_designed_rates_backoff_and_last_phase(bc32):
    plan = plan_for_point(bc32, _q((0.6, 0.3)), 0.5, 0.0, t_slots=4, s_phases=5)
    private, common = designed_rates(plan, 2 ** 20, 0, quant_payload=3.0, backoff_bits=8.0)
    assert private == pytest.approx(4 * 0.9 * 12)
    assert common == pytest.approx(3.0 + 4 * 1.1 * 12)
    assert designed_rates(plan, 2 ** 20, 0, quant_payload=3.0, backoff_bits=8.0, last_phase=True) == (0.0, 3.0)
    assert designed_rates(plan, 2 ** 6, 1, backoff_bits=8.0) == (0.0, 0.0)


def test_full_csit_margins_nonnegative(bc32):
    q = _q((1.0, 1.0))
    plan = plan_for_point(bc32, q, 1.0, 0.5, t_slots=8, s_phases=5)
    for snr in (1e3, 1e4):
        block, signals, records = _run_phase(bc32, q, plan, snr, seed=5)
        for r in range(2):
            check = mac_feasibility(block, plan, signals, records, r)
            assert check.feasible, check.margins
            assert check.achieved() == pytest.approx((check.designed_common, check.designed_private))


def test_overloaded_design_shows_negative_margin(bc32):
    q = _q((0.5, 0.5))
    plan = plan_for_point(bc32, q, 0.0, 0.5, t_slots=4, s_phases=5)
    block, signals, records = _run_phase(bc32, q, plan, 1e2, seed=6)
    check = mac_feasibility(block, plan, signals, records, 0, backoff_bits=-30.0)
    assert check.margins["common"] < 0
    assert not check.feasible
    common, private = check.achieved()
    assert common < check.designed_common
    assert private == 0.0


def test_common_split_follows_ic_plan():
    cfg = AntennaConfig(3, 2, ChannelKind.IC)
    plan = plan_for_point(cfg, _q((0.6, 0.3)), 0.5, 0.25, t_slots=4, s_phases=5)
    assert sum(plan.ic_common_split) == pytest.approx(plan.common_budget)
    # c1 forwards 2 * (0.5 - 0.3) of quantized interference, c2 forwards nothing
    assert plan.ic_new_common == pytest.approx((0.25 * 1.1, 0.75 * 1.1))

    split = designed_common_split(plan, 2 ** 20, quant_payload=(3.0, 5.0), backoff_bits=8.0)
    assert split == pytest.approx((5.0 + 4 * 0.275 * 12, 3.0 + 4 * 0.825 * 12))
    _, common = designed_rates(plan, 2 ** 20, 0, quant_payload=8.0, backoff_bits=8.0)
    assert sum(split) == pytest.approx(common)
    assert designed_common_split(plan, 2 ** 20, (3.0, 5.0), 8.0, last_phase=True) == (5.0, 3.0)


def test_interference_channel_checks_each_common_stream():
    cfg = AntennaConfig(3, 2, ChannelKind.IC)
    q = _q((0.6, 0.3))
    plan = plan_for_point(cfg, q, 0.5, 0.25, t_slots=4, s_phases=5)
    block, signals, records = _run_phase(cfg, q, plan, 1e5, seed=9)
    for r in range(2):
        check = mac_feasibility(block, plan, signals, records, r, quant_payload=(3.0, 5.0))
        assert check.designed_split == pytest.approx(designed_common_split(plan, 1e5, (3.0, 5.0)))
        assert sum(check.designed_split) == pytest.approx(check.designed_common)
        assert {"common_1", "common_2", "private_common_1", "private_common_2"} <= set(check.margins)
        for alone, joint in zip(check.bound_split, check.bound_private_split):
            assert alone <= check.bound_common + 1e-6
            assert check.bound_private - 1e-6 <= joint <= check.bound_sum + 1e-6
        assert sum(check.common_split_cap()) <= check.common_cap() + 1e-9


def test_broadcast_check_has_no_common_split(bc32):
    q = _q((0.8, 0.8))
    plan = build_phase_plan(bc32, q, "Estar", t_slots=4, s_phases=5)
    block, signals, records = _run_phase(bc32, q, plan, 1e5)
    check = mac_feasibility(block, plan, signals, records, 0)
    assert check.designed_split == ()
    assert check.common_split_cap() == ()
    assert set(check.margins) == {"private", "common", "sum"}


def _split_check(bound_common):
    return MacCheck(
        receiver=0,
        phase_index=0,
        designed_private=10.0,
        designed_common=12.0,
        bound_private=20.0,
        bound_common=bound_common,
        bound_sum=25.0,
        designed_split=(4.0, 8.0),
        bound_split=(6.0, 5.0),
        bound_private_split=(15.0, 14.0),
    )


def test_split_margins_and_achieved_rates():
    check = _split_check(10.0)
    assert check.margins["common_1"] == pytest.approx(2.0)
    assert check.margins["common_2"] == pytest.approx(-3.0)
    assert check.margins["private_common_1"] == pytest.approx(1.0)
    assert check.margins["private_common_2"] == pytest.approx(-4.0)
    assert not check.feasible
    assert check.common_split_cap() == pytest.approx((4.0, 5.0))
    # private is limited by the private streams plus c2
    assert check.achieved() == pytest.approx((9.0, 9.0))


def test_split_scaled_to_joint_common_bound():
    check = _split_check(6.0)
    assert check.common_split_cap() == pytest.approx((4.0 * 6 / 9, 5.0 * 6 / 9))
    common, _ = check.achieved()
    assert common == pytest.approx(6.0)


def test_received_power_orders(bc32):
    q = _q((0.8, 0.8))
    plan = build_phase_plan(bc32, q, "Estar", t_slots=400, s_phases=5)
    ladder = [1e2, 1e4, 1e6]
    terms = []
    for p in ladder:
        block = generate_block(bc32, q, 400, p, seed=7)
        block, signals, _ = phase_signals(block, plan, np.random.default_rng(8))
        terms.append(received_term_powers(block, signals, receiver=0))

    def exponent(name):
        return -measured_exponent([t[name] for t in terms], ladder, min_samples=100)

    assert exponent("common") == pytest.approx(1.0, abs=0.1)
    assert exponent("private_zf") == pytest.approx(1.0, abs=0.1)
    assert exponent("private_rand") == pytest.approx(0.2, abs=0.1)
    assert exponent("noise") == pytest.approx(0.0, abs=1e-9)
    assert exponent("interference") == pytest.approx(0.2, abs=0.1)
    assert exponent("delayed_residual") <= 0.1


def test_simulation_rejects_short_ladders(bc32):
    q = _q((0.5, 0.5))
    with pytest.raises(InsufficientLadderError):
        simulate_dof(bc32, q, "Cstar", [1e4], trials=20, seed=0)
    with pytest.raises(InsufficientLadderError):
        simulate_dof(bc32, q, "Cstar", [1e3, 1e4, 1e5], trials=20, seed=0)


def test_simulation_preconditions(bc32):
    q = _q((0.5, 0.5))
    with pytest.raises(ValueError):
        simulate_dof(bc32, q, "Cstar", LADDER, trials=10, seed=0)
    with pytest.raises(ValueError):
        simulate_dof(bc32, q, "Cstar", LADDER, trials=20, seed=0, s_phases=1)
    with pytest.raises(ValueError):
        simulate_dof(bc32, q, None, LADDER, trials=20, seed=0)


def test_simulation_is_deterministic(bc32):
    q = _q((0.8, 0.8))
    kwargs = dict(trials=20, seed=42, t_slots=2, s_phases=10)
    first = simulate_dof(bc32, q, "Estar", LADDER, **kwargs)
    second = simulate_dof(bc32, q, "Estar", LADDER, **kwargs)
    assert [p.achieved_rate for p in first.points] == [p.achieved_rate for p in second.points]
    assert first.d_hat == second.d_hat


def test_simulation_report_fields(bc32):
    q = _q((0.8, 0.8))
    report = simulate_dof(bc32, q, "Estar", LADDER, trials=20, seed=1, t_slots=4, s_phases=10)
    assert report.dof_point == pytest.approx((1.4, 1.6))
    assert report.fit_snr == (1e4, 1e5, 1e6)
    assert len(report.points) == 4
    for point in report.points:
        assert point.phases == 20
        assert point.distortion <= 10
        assert point.bits_budget - 1.0 < point.bits_used <= point.bits_budget + 1e-9
        assert -1e-9 <= point.max_bit_shortfall < 1.0
        assert len(point.checks) == 40
    assert len(report.margins()) == 4


def test_interference_channel_matches_broadcast_plan():
    q = _q((0.8, 0.8))
    kwargs = dict(trials=20, seed=3, t_slots=2, s_phases=10)
    bc = simulate_dof(AntennaConfig(3, 2), q, "Estar", LADDER, **kwargs)
    ic = simulate_dof(AntennaConfig(3, 2, ChannelKind.IC), q, "Estar", LADDER, **kwargs)
    assert [p.private_designed for p in bc.points] == [p.private_designed for p in ic.points]
    assert ic.kind == ChannelKind.IC


def test_slopes_bstar_without_quantization():
    report = simulate_dof(AntennaConfig(2, 1), _q((0.5, 0.5)), "Bstar", LADDER, trials=25, seed=0, t_slots=4, s_phases=25)
    assert report.d_hat[0] == pytest.approx(0.5, abs=0.15)
    assert report.d_hat[1] == pytest.approx(1.0, abs=0.15)


def test_slopes_common_only(bc32):
    report = simulate_dof(bc32, _q((0.5, 0.5)), None, LADDER, trials=25, seed=0,
                          delta_bar=0.0, omega=0.5, t_slots=4, s_phases=25)
    assert sum(report.d_hat) == pytest.approx(2.0, abs=0.15)
    assert report.d_hat[0] == pytest.approx(report.d_hat[1], abs=1e-9)


@pytest.fixture(scope="module")
def cstar_report():
    return simulate_dof(AntennaConfig(2, 1), _q((0.5, 0.5)), "Cstar", LADDER, trials=50, seed=0, t_slots=8, s_phases=25)


@pytest.fixture(scope="module")
def estar_report():
    return simulate_dof(AntennaConfig(3, 2), _q((0.8, 0.8)), "Estar", LADDER, trials=50, seed=0, t_slots=8, s_phases=25)


def test_slopes_miso_cstar(cstar_report):
    assert cstar_report.dof_point == pytest.approx((5 / 6, 5 / 6))
    assert cstar_report.d_hat[0] == pytest.approx(5 / 6, abs=0.15)
    assert cstar_report.d_hat[1] == pytest.approx(5 / 6, abs=0.15)


def test_slopes_estar(estar_report):
    assert estar_report.d_hat[0] == pytest.approx(1.4, abs=0.15)
    assert estar_report.d_hat[1] == pytest.approx(1.6, abs=0.15)


@pytest.mark.parametrize("report_name", ["cstar_report", "estar_report"])
def test_designed_rates_decodable_at_high_snr(report_name, request):
    report = request.getfixturevalue(report_name)
    for point in report.points[-2:]:
        assert min(point.feasible_fraction) >= 0.95, point.margin_min
    for point in report.points:
        assert point.distortion <= 10
        assert point.max_bit_shortfall < 1.0


def _point(snr, rates):
    return SnrPoint(
        snr=snr,
        designed_rate=rates,
        achieved_rate=rates,
        private_designed=(0.0, 0.0),
        margin_min=(0.0, 0.0),
        feasible_fraction=(1.0, 1.0),
        decodable_fraction=1.0,
        distortion=0.0,
        max_distortion=0.0,
        bits_budget=0.0,
        bits_used=0.0,
        overloads=0,
        effective_noise=(1.0, 1.0),
        phases=20,
    )


def test_fit_slopes_drops_lowest_point():
    # the lowest point is off the line and must not bend the fit
    points = [_point(1e3, (0.0, 0.0))] + [
        _point(p, (0.5 * np.log2(p), 2.0 + np.log2(p))) for p in (1e4, 1e5, 1e6)
    ]
    slopes, stderr, fit_snr = fit_slopes(points)
    assert slopes == pytest.approx((0.5, 1.0))
    assert stderr == pytest.approx((0.0, 0.0), abs=1e-9)
    assert fit_snr == (1e4, 1e5, 1e6)


def test_fit_slopes_keeps_three_points():
    points = [_point(p, (np.log2(p), 0.0)) for p in (1e2, 1e4, 1e6)]
    slopes, _, fit_snr = fit_slopes(points)
    assert slopes == pytest.approx((1.0, 0.0), abs=1e-9)
    assert fit_snr == (1e2, 1e4, 1e6)
