"""Optical elements as transformations of per-channel power spectra.

Powers are linear mW throughout; dB values only appear in DeviceParams.
Every element adds powers incoherently. Switch states may be fractional in
[0, 1] (a switch caught mid-transition), in which case the element's
transmission is the weighted blend of its two settled states.
"""

from dataclasses import dataclass, field

import numpy as np

from wavepla.channels import ChannelMask, WavelengthGrid, plus_set
from wavepla.config import DeviceParams
from wavepla.metrics import db_to_linear, dbm_to_mw, extinction_ratio

__all__ = [
    "SpectrumState",
    "SpectralModulatorStage",
    "apply_sm",
    "apply_edfa",
    "apply_waveshaper",
    "apply_spatial_switch",
    "combine_coupler",
    "detect",
    "extinction_ratio",
]


@dataclass(frozen=True, eq=False)
class SpectrumState:
    """Per-channel optical power (mW), aligned with a WavelengthGrid."""

    powers: np.ndarray

    def __post_init__(self) -> None:
        powers = np.array(self.powers, dtype=float)
        if powers.ndim != 1 or powers.size == 0:
            raise ValueError("SpectrumState needs a non-empty one-dimensional power vector")
        if (powers < 0).any() or not np.isfinite(powers).all():
            raise ValueError("Channel powers must be finite and non-negative")
        powers.setflags(write=False)
        object.__setattr__(self, "powers", powers)

    @classmethod
    def zeros(cls, channel_count: int) -> "SpectrumState":
        return cls(np.zeros(channel_count))

    @classmethod
    def source(cls, grid: WavelengthGrid, params: DeviceParams) -> "SpectrumState":
        """Flat comb at ``params.source_power`` dBm per channel."""
        return cls(np.full(grid.channel_count, dbm_to_mw(params.source_power)))

    def __len__(self) -> int:
        return int(self.powers.size)

    def dbm(self) -> np.ndarray:
        """Per-channel power in dBm (-inf for dark channels)."""
        with np.errstate(divide="ignore"):
            return 10.0 * np.log10(self.powers)

    def lit_channels(self, threshold_mw: float = 0.0) -> list[int]:
        """Channels carrying more than ``threshold_mw``."""
        return [int(c) for c in np.flatnonzero(self.powers > threshold_mw)]


@dataclass(frozen=True)
class SpectralModulatorStage:
    """WSS + 2x1 switch loading operand ``stage_index`` onto the spectrum."""

    stage_index: int
    plus_mask: ChannelMask = field(compare=False)

    @classmethod
    def for_stage(cls, stage_index: int, operand_count: int) -> "SpectralModulatorStage":
        return cls(stage_index, plus_set(stage_index, operand_count))

    def __post_init__(self) -> None:
        n = len(self.plus_mask).bit_length() - 1
        if self.plus_mask != plus_set(self.stage_index, n):
            raise ValueError(f"plus_mask does not match the '+' set of stage {self.stage_index}")


def _check_state(state: float) -> float:
    state = float(state)
    if not 0.0 <= state <= 1.0:
        raise ValueError(f"Switch state must lie in [0, 1], got {state}")
    return state


def _pass_and_block(params: DeviceParams) -> tuple[float, float]:
    """Linear transmission of a selected and of a suppressed branch."""
    if params.ideal_mode:
        return 1.0, 0.0
    t_pass = db_to_linear(-params.sm_insertion_loss)
    t_block = db_to_linear(-(params.sm_insertion_loss + params.stage_extinction))
    return t_pass, t_block


def _check_length(s: SpectrumState, expected: int, what: str) -> None:
    if len(s) != expected:
        raise ValueError(f"Spectrum has {len(s)} channels but the {what} has {expected}")


def sm_transmission(stage: SpectralModulatorStage, state: float, params: DeviceParams) -> np.ndarray:
    """Per-channel power transmission of ``stage`` with its switch at ``state``."""
    state = _check_state(state)
    t_pass, t_block = _pass_and_block(params)
    plus = stage.plus_mask.bits
    t_one = np.where(plus, t_pass, t_block)
    t_zero = np.where(plus, t_block, t_pass)
    return state * t_one + (1.0 - state) * t_zero


def apply_sm(
    s: SpectrumState,
    stage: SpectralModulatorStage,
    bit: float,
    params: DeviceParams,
) -> SpectrumState:
    """Pass the '+' set (bit=1) or the '-' set (bit=0) of ``stage``.

    Selected channels lose ``sm_insertion_loss``; the others additionally
    lose ``stage_extinction`` (they are zeroed in ideal mode).
    """
    _check_length(s, len(stage.plus_mask), "stage mask")
    return SpectrumState(s.powers * sm_transmission(stage, bit, params))


def ase_floor(grid: WavelengthGrid, params: DeviceParams) -> np.ndarray:
    """ASE power (mW) per channel, linear in dBm from short to long wavelength."""
    if params.ideal_mode:
        return np.zeros(grid.channel_count)
    if grid.channel_count == 1:
        return np.full(1, dbm_to_mw(params.ase_floor_short))
    position = np.arange(grid.channel_count) / (grid.channel_count - 1)
    floor_dbm = params.ase_floor_short + (params.ase_floor_long - params.ase_floor_short) * position
    return dbm_to_mw(floor_dbm)


def apply_edfa(s: SpectrumState, grid: WavelengthGrid, params: DeviceParams) -> SpectrumState:
    """Amplify by ``edfa_gain`` and add the wavelength-tilted ASE floor."""
    _check_length(s, grid.channel_count, "grid")
    if params.ideal_mode:
        return s
    return SpectrumState(s.powers * db_to_linear(params.edfa_gain) + ase_floor(grid, params))


def apply_waveshaper(s: SpectrumState, mask: ChannelMask, params: DeviceParams) -> SpectrumState:
    """Keep the channels of ``mask`` (less ``ws_insertion_loss``), block the rest fully."""
    _check_length(s, len(mask), "mask")
    t_pass = 1.0 if params.ideal_mode else db_to_linear(-params.ws_insertion_loss)
    return SpectrumState(np.where(mask.bits, s.powers * t_pass, 0.0))


def apply_spatial_switch(
    s: SpectrumState,
    bit: float,
    params: DeviceParams,
) -> tuple[SpectrumState, SpectrumState]:
    """1x2 switch: bit=1 routes to the upper port, bit=0 to the lower port.

    Returns:
        Tuple of (upper, lower). The unselected port carries the input
        suppressed by ``stage_extinction`` below the selected one.
    """
    state = _check_state(bit)
    t_pass, t_block = _pass_and_block(params)
    t_upper = state * t_pass + (1.0 - state) * t_block
    t_lower = state * t_block + (1.0 - state) * t_pass
    return SpectrumState(s.powers * t_upper), SpectrumState(s.powers * t_lower)


def combine_coupler(a: SpectrumState, b: SpectrumState) -> SpectrumState:
    """Incoherent per-channel power sum."""
    _check_length(b, len(a), "other coupler input")
    return SpectrumState(a.powers + b.powers)


def detect(s: SpectrumState) -> float:
    """Photodetector reading: total power over all channels (mW)."""
    return float(s.powers.sum())
