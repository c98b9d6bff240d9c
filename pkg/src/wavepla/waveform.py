"""Time-domain engine: NRZ-driven switches, sampled static evaluation.

Switches are the only time-varying elements and propagation delay is zero,
so each output sample is the static chain response at the instantaneous
(possibly fractional) switch states.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from tqdm import tqdm

from wavepla.config import PlaConfig
from wavepla.simulator import PlaSimulator, simulator_for

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Waveform:
    """Uniformly sampled detected power (mW)."""

    sample_rate: float
    samples: np.ndarray
    bit_rate: float

    def __post_init__(self) -> None:
        ratio = self.sample_rate / self.bit_rate
        if ratio < 1 or abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ValueError(
                f"sample_rate / bit_rate must be a positive integer, got {ratio}"
            )

    @property
    def samples_per_bit(self) -> int:
        return int(round(self.sample_rate / self.bit_rate))

    @property
    def bit_count(self) -> int:
        return len(self.samples) // self.samples_per_bit

    def times_ps(self) -> np.ndarray:
        return np.arange(len(self.samples)) / self.sample_rate * 1e12

    def mid_bit_indices(self) -> np.ndarray:
        spb = self.samples_per_bit
        return np.arange(self.bit_count) * spb + spb // 2

    def mid_bit_samples(self) -> np.ndarray:
        return self.samples[self.mid_bit_indices()]

    def decisions(self, threshold: float) -> list[int]:
        """Thresholded mid-bit samples, one per bit."""
        return [int(v > threshold) for v in self.mid_bit_samples()]


def nrz_states(
    bits: Sequence[int],
    samples_per_bit: int,
    rise_time_fraction: float,
) -> np.ndarray:
    """Switch state per sample for an NRZ bit stream.

    Each transition is a raised-cosine ramp of ``rise_time_fraction`` bit
    periods centred on the bit boundary; sample ``i`` is taken at
    ``i / samples_per_bit`` bit periods.
    """
    levels = np.asarray(bits, dtype=float)
    if levels.ndim != 1 or levels.size == 0:
        raise ValueError("Bit stream must be a non-empty sequence")
    if not np.isin(levels, (0.0, 1.0)).all():
        raise ValueError("Bit stream values must be 0 or 1")

    t = np.arange(levels.size * samples_per_bit) / samples_per_bit
    current = levels[np.minimum(np.floor(t).astype(int), levels.size - 1)]
    if rise_time_fraction == 0 or levels.size == 1:
        return current

    half = rise_time_fraction / 2.0
    boundary = np.rint(t).astype(int)
    offset = t - boundary
    ramping = (np.abs(offset) < half) & (boundary >= 1) & (boundary <= levels.size - 1)
    k = np.clip(boundary, 1, levels.size - 1)
    before, after = levels[k - 1], levels[k]
    u = (offset + half) / rise_time_fraction
    blended = before + (after - before) * (1.0 - np.cos(np.pi * u)) / 2.0
    return np.where(ramping, blended, current)


def run_waveform(
    cfg: PlaConfig | PlaSimulator,
    streams: Sequence[Sequence[int]],
    bit_rate: float,
    samples_per_bit: int,
    rise_time_fraction: float = 0.0,
    verbose: bool = False,
) -> dict[str, Waveform]:
    """Drive every operand with its bit stream and sample every output.

    Args:
        cfg: Configuration (or a prepared simulator).
        streams: One bit sequence per operand, all the same length.
        bit_rate: Bits per second.
        samples_per_bit: Samples per bit period (>= 2).
        rise_time_fraction: Transition duration as a fraction of the bit period.
        verbose: Show a progress bar.

    Returns:
        Dictionary mapping output name to its Waveform.

    Raises:
        ValueError: On stream count/length mismatch or invalid timing.
    """
    sim = simulator_for(cfg)

    if len(streams) != sim.operand_count:
        raise ValueError(f"Need {sim.operand_count} streams, got {len(streams)}")
    lengths = {len(s) for s in streams}
    if len(lengths) != 1:
        raise ValueError(f"Stream lengths differ: {sorted(lengths)}")
    if bit_rate <= 0:
        raise ValueError(f"bit_rate must be positive, got {bit_rate}")
    if samples_per_bit < 2:
        raise ValueError(f"samples_per_bit must be >= 2, got {samples_per_bit}")
    if not 0.0 <= rise_time_fraction <= 1.0:
        raise ValueError(f"rise_time_fraction must be in [0, 1], got {rise_time_fraction}")
    mid_offset = (samples_per_bit // 2) / samples_per_bit
    if rise_time_fraction / 2.0 > mid_offset:
        raise ValueError(
            f"rise_time_fraction {rise_time_fraction} leaves no settled mid-bit sample "
            f"at {samples_per_bit} samples per bit"
        )

    states = np.array([nrz_states(s, samples_per_bit, rise_time_fraction) for s in streams])
    sample_count = states.shape[1]

    cache: dict[tuple[float, ...], np.ndarray] = {}
    powers = np.empty((sample_count, len(sim.output_names)))
    for i in tqdm(range(sample_count), disable=not verbose, desc="Waveform"):
        key = tuple(states[:, i])
        if key not in cache:
            cache[key] = sim.output_powers(key)
        powers[i] = cache[key]

    log.debug("Sampled %d instants, %d distinct switch states", sample_count, len(cache))

    sample_rate = bit_rate * samples_per_bit
    return {
        name: Waveform(sample_rate=sample_rate, samples=powers[:, k].copy(), bit_rate=bit_rate)
        for k, name in enumerate(sim.output_names)
    }
