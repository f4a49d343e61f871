import numpy as np
import pytest

from models.channel import AntennaConfig, ChannelKind, QualityExponents
from models.region import CornerLabel
from services.scheme_plan import (
    DeltaBarOutOfRangeError,
    InfeasibleError,
    TargetInactiveError,
    build_phase_plan,
    calibrate,
    delta_bar_bound,
    delta_com,
    general_dof_point,
    plan_for_point,
    solve_delta_sequences,
    solve_user_deltas,
)


def _q(alpha, beta=(1.0, 1.0)):
    return QualityExponents(alpha_avg=alpha, beta_avg=beta)


@pytest.fixture
def bc32():
    return AntennaConfig(3, 2)


def test_calibrate_fstar(bc32):
    assert calibrate(bc32, _q((0.8, 0.8)), "Fstar") == pytest.approx((1.0, 1.0))


def test_calibrate_cstar(bc32):
    assert calibrate(bc32, _q((0.5, 0.5)), CornerLabel.CSTAR) == pytest.approx((0.8, 0.0))


def test_calibrate_inactive_target_lists_active_set(bc32):
    with pytest.raises(TargetInactiveError, match="Astar") as excinfo:
        calibrate(bc32, _q((0.5, 0.5)), CornerLabel.ASTAR)
    assert "Cstar" in str(excinfo.value)


def test_calibrate_requires_csit_regime():
    with pytest.raises(ValueError):
        calibrate(AntennaConfig(2, 2), _q((0.5, 0.5)), CornerLabel.BSTAR)


def test_general_point_estar(bc32):
    assert general_dof_point(bc32, _q((0.8, 0.8)), 1.0, 0.0) == pytest.approx((1.4, 1.6))


def test_general_point_bstar(bc32):
    assert general_dof_point(bc32, _q((0.5, 0.5)), 0.5, 0.0) == pytest.approx((0.5, 2.0))


def test_general_point_low_delayed_quality(bc32):
    q = _q((0.2, 0.2), (0.5, 0.5))
    assert general_dof_point(bc32, q, 0.5, 0.0) == pytest.approx((1.1, 1.4))


def test_delta_bar_above_bound(bc32):
    q = _q((0.2, 0.2), (0.5, 0.5))
    assert delta_bar_bound(bc32, q) == pytest.approx(0.5)
    with pytest.raises(DeltaBarOutOfRangeError):
        general_dof_point(bc32, q, 0.6, 0.0)


def test_omega_out_of_range(bc32):
    with pytest.raises(ValueError):
        general_dof_point(bc32, _q((0.5, 0.5)), 0.5, 1.5)


def test_common_surplus_splits_between_users(bc32):
    q = _q((0.6, 0.3))
    d0 = general_dof_point(bc32, q, 0.5, 0.0)
    d1 = general_dof_point(bc32, q, 0.5, 1.0)
    surplus = delta_com(bc32, q, 0.5)
    assert surplus == pytest.approx(1.1)
    assert d1[0] - d0[0] == pytest.approx(surplus)
    assert d0[1] - d1[1] == pytest.approx(surplus)


def test_solve_user_deltas_with_slot_variation():
    delta = solve_user_deltas([0.2, 0.6], [1.0, 1.0], 0.5)
    assert delta == pytest.approx([1 / 3, 2 / 3])
    assert delta.mean() == pytest.approx(0.5)


def test_solve_user_deltas_above_alpha_mean():
    delta = solve_user_deltas([0.2, 0.6], [0.8, 1.0], 0.7)
    assert delta.mean() == pytest.approx(0.7)
    assert np.all(delta <= np.array([0.8, 1.0]) + 1e-12)
    assert np.maximum(delta - [0.2, 0.6], 0).mean() == pytest.approx(0.7 - 0.4)


def test_solve_user_deltas_infeasible():
    with pytest.raises(InfeasibleError):
        solve_user_deltas([0.9], [0.3], 0.5)


def test_delta_sequences_constant_without_slot_exponents():
    delta = solve_delta_sequences(_q((0.6, 0.3)), 0.5, t_slots=4)
    assert delta.shape == (2, 4)
    assert np.allclose(delta, 0.5)


def test_delta_sequences_need_length():
    with pytest.raises(ValueError):
        solve_delta_sequences(_q((0.6, 0.3)), 0.5)


def test_plan_ledger(bc32):
    plan = plan_for_point(bc32, _q((0.6, 0.3)), 0.5, 0.0, t_slots=4, s_phases=10)
    per_slot = plan.ledger()["per_slot"]
    assert per_slot["private_1"] == pytest.approx(0.9)
    assert per_slot["private_2"] == pytest.approx(0.5)
    assert per_slot["common"] == pytest.approx(1.5)
    assert per_slot["quantized"] == pytest.approx(0.4)
    assert per_slot["delta_com"] == pytest.approx(1.1)
    assert plan.ledger()["per_phase"]["common"] == pytest.approx(6.0)
    assert "common_tx1" not in per_slot


def test_plan_ledger_balances_common_budget(bc32):
    plan = plan_for_point(bc32, _q((0.6, 0.3)), 0.5, 0.0, t_slots=4, s_phases=10)
    per_slot = plan.ledger()["per_slot"]
    assert per_slot["quantized"] + per_slot["delta_com"] == pytest.approx(per_slot["common"])


def test_plan_tables_and_quant_budget(bc32):
    plan = plan_for_point(bc32, _q((0.6, 0.3)), 0.5, 0.0, t_slots=3, s_phases=10)
    assert plan.rate_table["a"] == pytest.approx([0.5] * 3)
    assert plan.rate_table["a_prime"] == pytest.approx([0.4] * 3)
    assert plan.rate_table["b_prime"] == pytest.approx([0.0] * 3)
    assert plan.power_table["a_prime"] == pytest.approx([0.2] * 3)
    assert plan.quant_slot_budget[:, 0] == pytest.approx([0.0, 0.4])
    assert plan.sequence_residual <= 1e-9


def test_ic_plan_splits_common_per_transmitter():
    cfg = AntennaConfig(3, 2, ChannelKind.IC)
    plan = plan_for_point(cfg, _q((0.6, 0.3)), 0.5, 0.5, t_slots=4, s_phases=10)
    per_slot = plan.ledger()["per_slot"]
    assert per_slot["common_tx1"] == pytest.approx(0.95)
    assert per_slot["common_tx2"] == pytest.approx(0.55)
    assert per_slot["common_tx1"] + per_slot["common_tx2"] == pytest.approx(per_slot["common"])


def test_ic_and_bc_share_private_budgets():
    q = _q((0.8, 0.8))
    bc = build_phase_plan(AntennaConfig(3, 2), q, "Estar", 4, 10)
    ic = build_phase_plan(AntennaConfig(3, 2, ChannelKind.IC), q, "Estar", 4, 10)
    assert bc.private_budget == pytest.approx(ic.private_budget)
    assert bc.dof_point == pytest.approx(ic.dof_point)


def test_build_phase_plan_estar(bc32):
    plan = build_phase_plan(bc32, _q((0.8, 0.8)), CornerLabel.ESTAR, t_slots=8, s_phases=25)
    assert plan.target == CornerLabel.ESTAR
    assert plan.dof_point == pytest.approx((1.4, 1.6))
    assert plan.delta_com == pytest.approx(0.2)
    assert plan.quant_budget == pytest.approx(0.8)


def test_plan_from_slot_sequences(bc32):
    q = QualityExponents.from_sequences([[0.4, 0.8], [0.2, 0.2]], [[1.0, 1.0], [1.0, 1.0]])
    plan = plan_for_point(bc32, q, 0.5, 0.5, t_slots=2, s_phases=5)
    assert plan.delta_seq.mean(axis=1) == pytest.approx([0.5, 0.5])
    assert np.all(plan.delta_seq <= plan.beta_seq + 1e-12)


def test_plan_rejects_bad_lengths(bc32):
    with pytest.raises(ValueError):
        plan_for_point(bc32, _q((0.5, 0.5)), 0.5, 0.0, t_slots=0, s_phases=5)
