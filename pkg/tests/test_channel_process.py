import numpy as np
import pytest

from models.channel import AntennaConfig, ChannelKind, QualityExponents
from services.channel_process import (
    InsufficientSamplesError,
    dump_block,
    error_samples,
    generate_block,
    load_block,
    measured_exponent,
    redraw_slot,
)

LADDER = [1e2, 1e4, 1e6]


def _q(alpha, beta=(1.0, 1.0)):
    return QualityExponents(alpha_avg=alpha, beta_avg=beta)


@pytest.fixture
def bc32():
    return AntennaConfig(3, 2)


def test_block_shapes(bc32):
    block = generate_block(bc32, _q((0.5, 0.5)), t_slots=4, snr=1e3, seed=0)
    assert len(block) == 4
    slot = block[0]
    assert set(slot.h_true) == {"1", "2"}
    assert slot.h_true["1"].shape == (2, 3)
    assert slot.delayed_available_at == 1


def test_ic_block_links():
    cfg = AntennaConfig(3, 2, ChannelKind.IC)
    block = generate_block(cfg, _q((0.5, 0.5)), t_slots=2, snr=1e3, seed=0, eta=1)
    assert set(block[0].h_current) == {"11", "12", "21", "22"}


def test_same_seed_same_block(bc32):
    first = generate_block(bc32, _q((0.5, 0.3)), 6, 1e4, seed=11)
    second = generate_block(bc32, _q((0.5, 0.3)), 6, 1e4, seed=11)
    other = generate_block(bc32, _q((0.5, 0.3)), 6, 1e4, seed=12)
    for a, b, c in zip(first, second, other):
        assert np.array_equal(a.h_true["1"], b.h_true["1"])
        assert np.array_equal(a.h_current["2"], b.h_current["2"])
        assert not np.array_equal(a.h_true["1"], c.h_true["1"])


def test_error_variance_full_quality(bc32):
    block = generate_block(bc32, _q((1.0, 1.0)), 10000, 1e4, seed=3)
    assert 0.5e-4 <= error_samples(block, 0).mean() <= 2e-4


def test_error_variance_no_quality(bc32):
    block = generate_block(bc32, _q((0.0, 0.0), (0.0, 0.0)), 4000, 1e4, seed=3)
    assert error_samples(block, 1).mean() == pytest.approx(1.0, abs=0.05)


def test_delayed_error_smaller_than_current(bc32):
    block = generate_block(bc32, _q((0.5, 0.5)), 2000, 1e4, seed=4)
    assert error_samples(block, 0, delayed=True).mean() < error_samples(block, 0).mean()


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_current_error_uncorrelated_with_estimate(bc32, alpha):
    block = generate_block(bc32, _q((alpha, alpha)), 10000, 1e4, seed=5)
    errors = np.concatenate([slot.current_error("1").ravel() for slot in block])
    estimates = np.concatenate([slot.h_current["1"].ravel() for slot in block])
    assert abs(np.corrcoef(errors.real, estimates.real)[0, 1]) < 0.02
    assert abs(np.corrcoef(errors.imag, estimates.imag)[0, 1]) < 0.02


def test_delayed_error_uncorrelated_with_current_error(bc32):
    block = generate_block(bc32, _q((0.0, 0.0), (0.0, 0.0)), 10000, 1e4, seed=6)
    current = np.concatenate([slot.current_error("2").ravel() for slot in block])
    delayed = np.concatenate([slot.delayed_error("2").ravel() for slot in block])
    assert abs(np.corrcoef(current.real, delayed.real)[0, 1]) < 0.02


def test_true_channel_power_adds_estimate_and_error(bc32):
    block = generate_block(bc32, _q((0.0, 0.0), (0.0, 0.0)), 4000, 1e4, seed=7)
    power = np.mean([np.mean(np.abs(slot.h_true["1"]) ** 2) for slot in block])
    assert power == pytest.approx(2.0, rel=0.05)


def test_exponent_fidelity(bc32):
    q = _q((0.6, 0.3), (1.0, 0.8))
    blocks = [generate_block(bc32, q, 2000, p, seed=9) for p in LADDER]
    assert measured_exponent([error_samples(b, 0) for b in blocks], LADDER) == pytest.approx(0.6, abs=0.05)
    assert measured_exponent([error_samples(b, 1) for b in blocks], LADDER) == pytest.approx(0.3, abs=0.05)
    delayed = [error_samples(b, 1, delayed=True) for b in blocks]
    assert measured_exponent(delayed, LADDER) == pytest.approx(0.8, abs=0.05)


def test_slot_sequences_follow_exponents(bc32):
    q = QualityExponents.from_sequences([[1.0, 0.0], [0.5, 0.5]], [[1.0, 1.0], [1.0, 1.0]])
    block = generate_block(bc32, q, 2, 1e4, seed=1)
    assert block[0].alpha == (1.0, 0.5)
    assert block[1].alpha == (0.0, 0.5)


def test_measured_exponent_synthetic():
    rng = np.random.default_rng(0)
    ladder = [1e2, 1e3, 1e4]

    def draws(exponent):
        return [rng.exponential(p ** -exponent, 2000) for p in ladder]

    assert measured_exponent(draws(0.5), ladder) == pytest.approx(0.5, abs=0.05)
    assert measured_exponent(draws(0.0), ladder) == pytest.approx(0.0, abs=0.05)
    assert measured_exponent(draws(1.0), ladder) == pytest.approx(1.0, abs=0.05)


def test_measured_exponent_needs_samples():
    with pytest.raises(InsufficientSamplesError):
        measured_exponent([np.ones(10), np.ones(10)], [1e2, 1e3])
    with pytest.raises(InsufficientSamplesError):
        measured_exponent([np.ones(2000)], [1e2])


def test_generate_block_rejects_bad_inputs(bc32):
    with pytest.raises(ValueError):
        generate_block(bc32, _q((0.5, 0.5)), 4, snr=1.0, seed=0)
    with pytest.raises(ValueError):
        generate_block(bc32, _q((0.5, 0.5)), 4, snr=1e3, seed=0, eta=4)


def test_redraw_slot_keeps_exponents(bc32):
    block = generate_block(bc32, _q((0.5, 0.25)), 2, 1e3, seed=0)
    fresh = redraw_slot(np.random.default_rng(1), bc32, block[1])
    assert fresh.alpha == block[1].alpha
    assert fresh.slot_index == 1
    assert not np.array_equal(fresh.h_true["1"], block[1].h_true["1"])


def test_dump_and_load_block(bc32, tmp_path):
    block = generate_block(bc32, _q((0.5, 0.25)), 3, 1e3, seed=2, eta=2)
    path = dump_block(block, tmp_path / "block.npz")
    loaded = load_block(path)
    assert loaded.cfg == block.cfg
    assert loaded.seed == 2 and loaded.eta == 2 and loaded.snr == 1e3
    assert len(loaded) == 3
    for original, restored in zip(block, loaded):
        assert np.array_equal(original.h_delayed["2"], restored.h_delayed["2"])
        assert restored.delayed_available_at == original.delayed_available_at
