"""Tests for the time-domain engine."""

import numpy as np
import pytest

from wavepla.simulator import PlaSimulator, configure
from wavepla.synthesis.stdlib import comparator4
from wavepla.waveform import Waveform, nrz_states, run_waveform


@pytest.fixture(scope="module")
def comparator_sim():
    return PlaSimulator(configure(comparator4()))


def comparator_streams(a4: list[int], b4: list[int]) -> list[list[int]]:
    """A4 and B4 toggle; A3..A1 = B3..B1 = 101."""
    n = len(a4)
    fixed = [1, 0, 1]
    return [a4] + [[v] * n for v in fixed] + [b4] + [[v] * n for v in fixed]


class TestNrzStates:
    """Tests for switch-state generation."""

    def test_piecewise_constant(self):
        """Zero rise time gives square bits."""
        states = nrz_states([0, 1, 0], 4, 0.0)
        assert states.tolist() == [0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0]

    def test_transition_midpoint(self):
        """Edges are centred on the bit boundary."""
        states = nrz_states([0, 1], 4, 0.5)
        assert states[4] == pytest.approx(0.5)
        assert states[:4].tolist() == [0, 0, 0, 0]
        assert states[5:].tolist() == [1, 1, 1]

    def test_bounded(self):
        """Switch states stay within [0, 1]."""
        rng = np.random.default_rng(11)
        states = nrz_states(rng.integers(0, 2, size=32), 16, 0.8)
        assert ((states >= 0) & (states <= 1)).all()

    def test_rejects_non_binary(self):
        """Stream bits must be 0 or 1."""
        with pytest.raises(ValueError):
            nrz_states([0, 2], 4, 0.0)


class TestRunWaveform:
    """Tests for run_waveform."""

    def test_constant_streams(self, comparator_sim):
        """Constant streams give constant output levels."""
        streams = [[int(ch)] * 8 for ch in "10010011"]
        waves = run_waveform(comparator_sim, streams, 10e9, 16)
        gt = waves["A>B"]
        assert np.allclose(gt.samples, gt.samples[0])
        threshold = comparator_sim.calibrate().thresholds["A>B"]
        assert gt.decisions(threshold) == [1] * 8

    def test_sample_timing(self, comparator_sim):
        """Sixteen samples per 100 ps bit, decided mid-bit."""
        streams = [[0, 1]] * 8
        wave = run_waveform(comparator_sim, streams, 10e9, 16)["A=B"]
        assert wave.samples_per_bit == 16
        assert wave.bit_count == 2
        assert wave.times_ps()[16] == pytest.approx(100.0)
        assert wave.mid_bit_indices().tolist() == [8, 24]

    def test_comparator_scenario(self, comparator_sim):
        """Mid-bit decisions match static evaluation bit for bit."""
        rng = np.random.default_rng(2024)
        a4 = rng.integers(0, 2, size=64).tolist()
        b4 = rng.integers(0, 2, size=64).tolist()
        streams = comparator_streams(a4, b4)
        waves = run_waveform(comparator_sim, streams, 10e9, 16, rise_time_fraction=0.3)
        thresholds = comparator_sim.calibrate().thresholds

        for name, wave in waves.items():
            decided = wave.decisions(thresholds[name])
            for k in range(64):
                x = tuple(stream[k] for stream in streams)
                assert decided[k] == comparator_sim.evaluate(x).decisions[name]

        # A3..A1 == B3..B1, so A>B follows A4 & ~B4
        expected = [int(a and not b) for a, b in zip(a4, b4)]
        assert waves["A>B"].decisions(thresholds["A>B"]) == expected

    def test_transitions_visible(self, comparator_sim):
        """Between settled levels the output passes through intermediate powers."""
        streams = comparator_streams([0, 1], [0, 0])
        wave = run_waveform(comparator_sim, streams, 10e9, 16, rise_time_fraction=0.5)["A>B"]
        low, high = wave.samples[0], wave.samples[-1]
        assert low < wave.samples[16] < high

    def test_stream_count(self, comparator_sim):
        """One stream per operand is required."""
        with pytest.raises(ValueError):
            run_waveform(comparator_sim, [[0, 1]] * 7, 10e9, 16)

    def test_stream_lengths(self, comparator_sim):
        """All streams must have the same length."""
        streams = [[0, 1]] * 7 + [[0, 1, 0]]
        with pytest.raises(ValueError):
            run_waveform(comparator_sim, streams, 10e9, 16)

    def test_rise_too_long(self, comparator_sim):
        """Edges reaching the sampling point are rejected."""
        with pytest.raises(ValueError):
            run_waveform(comparator_sim, [[0, 1]] * 8, 10e9, 3, rise_time_fraction=0.8)


class TestWaveform:
    def test_sample_rate_must_be_multiple(self):
        """The sample rate must be a multiple of the bit rate."""
        with pytest.raises(ValueError):
            Waveform(sample_rate=15e9, samples=np.zeros(4), bit_rate=10e9)
