"""End-to-end PLA simulation: device chain, calibration, reports.

The chain for one input vector is::

    source -> SM_1 ... SM_Nw (EDFA after stage edfa_position)
           -> switch tree driven by operands Nw+1..N
           -> per-output waveshaper on every port -> coupler -> photodetector

Multi-output functions tap the minterm bus without splitting loss.
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from tqdm import tqdm

from wavepla.channels import as_input_vector, minterm_of_channel
from wavepla.config import OutputSpec, PlaConfig, resize_config
from wavepla.devices import (
    SpectralModulatorStage,
    SpectrumState,
    apply_edfa,
    apply_sm,
    apply_spatial_switch,
    apply_waveshaper,
    combine_coupler,
    detect,
)
from wavepla.metrics import db_to_linear, decision_threshold, mw_to_dbm
from wavepla.synthesis.spatial import plan_spatial
from wavepla.synthesis.tables import TruthTable, compile_mask

log = logging.getLogger(__name__)

MAX_SWEEP_OPERANDS = 16


class NonSeparableError(ValueError):
    """No threshold separates an output's high and low power levels."""

    def __init__(self, output: str, min_high: float, max_low: float):
        super().__init__(
            f"Output {output!r} is not separable: min(high)={min_high:.4g} mW "
            f"<= max(low)={max_low:.4g} mW"
        )
        self.output = output
        self.min_high = min_high
        self.max_low = max_low


@dataclass
class EvalResult:
    """Detected powers and decisions for one input vector."""

    powers_mw: dict[str, float]
    powers_dbm: dict[str, float]
    decisions: dict[str, int]
    thresholds: dict[str, float]

    def bits(self, names: Sequence[str] | None = None) -> list[int]:
        """Decisions in output order (or in the order of ``names``)."""
        return [self.decisions[n] for n in (names or list(self.decisions))]


@dataclass
class Calibration:
    """Per-output decision thresholds and the margins they leave."""

    thresholds: dict[str, float]
    margins_db: dict[str, float]
    min_high: dict[str, float] = field(default_factory=dict)
    max_low: dict[str, float] = field(default_factory=dict)

    @property
    def worst_margin_db(self) -> float:
        return min(self.margins_db.values()) if self.margins_db else math.inf


class PlaSimulator:
    """Compiled view of a PlaConfig that evaluates input vectors.

    Stages, masks and the all-input sweep are built once and reused; the
    object is read-only after construction apart from its caches, so distinct
    input vectors may be evaluated from several threads.
    """

    def __init__(self, config: PlaConfig):
        self.config = config
        self.params = config.params
        self.grid = config.wavelength_grid()
        self.operand_count = config.operand_count
        self.wavelength_operands = config.wavelength_operands
        self.spatial_operands = config.spatial_operands
        self.output_names = config.output_names
        self.edfa_after = min(self.params.edfa_position, self.wavelength_operands)

        self.stages = [
            SpectralModulatorStage.for_stage(j, self.wavelength_operands)
            for j in range(1, self.wavelength_operands + 1)
        ]

        # [output, port, channel]
        masks = config.output_masks()
        self._masks = masks
        if masks:
            self._mask_tensor = np.array([[m.bits for m in ports] for ports in masks], dtype=float)
        else:
            self._mask_tensor = np.zeros((0, config.port_count, self.grid.channel_count))
        self._ws_transmission = 1.0 if self.params.ideal_mode else db_to_linear(-self.params.ws_insertion_loss)

        self._sweep: np.ndarray | None = None
        self._calibration: Calibration | None = None

        log.debug(
            "PLA: %d operands (%d wavelength, %d spatial), %d outputs, EDFA after stage %d",
            self.operand_count,
            self.wavelength_operands,
            self.spatial_operands,
            len(self.output_names),
            self.edfa_after,
        )

    def truth_tables(self) -> list[TruthTable]:
        """Function realized by each output, over all N operands."""
        tables = []
        for name, ports in zip(self.output_names, self._mask_tensor):
            # ports[p, c] -> global index c * P + p
            outputs = ports.T.reshape(-1).astype(bool)
            tables.append(TruthTable(self.operand_count, outputs, name=name))
        return tables

    def _states(self, x: Sequence[float]) -> tuple[float, ...]:
        if len(x) != self.operand_count:
            raise ValueError(f"Expected {self.operand_count} input bits, got {len(x)}")
        return tuple(float(v) for v in x)

    def propagate(self, x: Sequence[float]) -> list[SpectrumState]:
        """Spectra arriving at the waveshaper of every spatial port.

        Entries of ``x`` are switch states: 0/1 for logic levels, fractional
        values for switches in transition.
        """
        states = self._states(x)
        s = SpectrumState.source(self.grid, self.params)
        if self.edfa_after == 0:
            s = apply_edfa(s, self.grid, self.params)
        for j, stage in enumerate(self.stages, start=1):
            s = apply_sm(s, stage, states[j - 1], self.params)
            if j == self.edfa_after:
                s = apply_edfa(s, self.grid, self.params)

        ports = [s]
        for state in states[self.wavelength_operands :]:
            next_ports = []
            for port in ports:
                upper, lower = apply_spatial_switch(port, state, self.params)
                next_ports.extend([lower, upper])
            ports = next_ports
        return ports

    def spectrum(self, x: Sequence[float]) -> SpectrumState:
        """Waveshaper-input spectrum, ports combined by a coupler."""
        return functools.reduce(combine_coupler, self.propagate(x))

    def output_powers(self, x: Sequence[float]) -> np.ndarray:
        """Detected power (mW) of every output for input ``x``.

        Same readings as detected_powers, computed as one contraction over
        ports and channels for sweeps.
        """
        ports = np.array([p.powers for p in self.propagate(x)])
        return self._ws_transmission * np.einsum("opc,pc->o", self._mask_tensor, ports)

    def detected_powers(self, x: Sequence[float]) -> np.ndarray:
        """Per-output waveshaper on every port, coupler, then photodetector (mW)."""
        ports = self.propagate(x)
        readings = []
        for port_masks in self._masks:
            shaped = [apply_waveshaper(s, m, self.params) for s, m in zip(ports, port_masks)]
            readings.append(detect(functools.reduce(combine_coupler, shaped)))
        return np.array(readings)

    def sweep(self, verbose: bool = False) -> np.ndarray:
        """Output powers for every input state, shape (2^N, outputs)."""
        if self._sweep is None:
            if self.operand_count > MAX_SWEEP_OPERANDS:
                raise ValueError(
                    f"Exhaustive sweep limited to {MAX_SWEEP_OPERANDS} operands, "
                    f"configuration has {self.operand_count}"
                )
            n = self.operand_count
            rows = [
                self.output_powers(minterm_of_channel(i, n))
                for i in tqdm(range(2**n), disable=not verbose, desc="Sweep")
            ]
            sweep = np.array(rows).reshape(2**n, len(self.output_names))
            sweep.setflags(write=False)
            self._sweep = sweep
        return self._sweep

    def calibrate(self, verbose: bool = False) -> Calibration:
        """Thresholds from the exhaustive sweep; see calibrate_thresholds."""
        if self._calibration is None:
            sweep = self.sweep(verbose=verbose)
            calibration = Calibration(thresholds={}, margins_db={})
            for k, tt in enumerate(self.truth_tables()):
                highs = sweep[tt.outputs, k]
                lows = sweep[~tt.outputs, k]
                threshold, margin = decision_threshold(highs, lows)
                min_high = float(highs.min()) if highs.size else math.nan
                max_low = float(lows.max()) if lows.size else math.nan
                if margin <= 0:
                    raise NonSeparableError(tt.name, min_high, max_low)
                calibration.thresholds[tt.name] = threshold
                calibration.margins_db[tt.name] = margin
                calibration.min_high[tt.name] = min_high
                calibration.max_low[tt.name] = max_low
            log.info(
                "Calibrated %d outputs, worst margin %.2f dB",
                len(calibration.thresholds),
                calibration.worst_margin_db,
            )
            self._calibration = calibration
        return self._calibration

    def evaluate(
        self,
        x: Sequence[int] | str,
        thresholds: dict[str, float] | None = None,
    ) -> EvalResult:
        """Run input vector ``x`` through the chain and decide every output."""
        vector = as_input_vector(x)
        if thresholds is None:
            thresholds = self.calibrate().thresholds
        powers = self.detected_powers(vector)
        return self._result(powers, thresholds)

    def _result(self, powers: np.ndarray, thresholds: dict[str, float]) -> EvalResult:
        powers_mw = {n: float(p) for n, p in zip(self.output_names, powers)}
        return EvalResult(
            powers_mw=powers_mw,
            powers_dbm={n: mw_to_dbm(p) for n, p in powers_mw.items()},
            decisions={n: int(p > thresholds[n]) for n, p in powers_mw.items()},
            thresholds=dict(thresholds),
        )

    def decision_table(self, verbose: bool = False) -> np.ndarray:
        """Thresholded decisions for every input state, shape (2^N, outputs)."""
        thresholds = self.calibrate(verbose=verbose).thresholds
        limits = np.array([thresholds[n] for n in self.output_names])
        return self.sweep() > limits[None, :]

    def confusion_matrix(self, verbose: bool = False) -> np.ndarray:
        """Per-channel dBm at the waveshaper input; row i is input state i."""
        if self.spatial_operands:
            raise ValueError("Confusion matrix needs a wavelength-only (decoder) configuration")
        n = self.operand_count
        rows = [
            self.spectrum(minterm_of_channel(i, n)).dbm()
            for i in tqdm(range(2**n), disable=not verbose, desc="Confusion matrix")
        ]
        return np.array(rows)


@functools.lru_cache(maxsize=16)
def _cached_simulator(config_json: str) -> PlaSimulator:
    return PlaSimulator(PlaConfig.model_validate_json(config_json))


def simulator_for(config: PlaConfig | PlaSimulator) -> PlaSimulator:
    """Shared PlaSimulator for ``config`` (keyed by its JSON form)."""
    if isinstance(config, PlaSimulator):
        return config
    return _cached_simulator(config.model_dump_json())


def evaluate(cfg: PlaConfig | PlaSimulator, x: Sequence[int] | str) -> EvalResult:
    """Evaluate one input vector with calibrated thresholds."""
    return simulator_for(cfg).evaluate(x)


def calibrate_thresholds(cfg: PlaConfig | PlaSimulator, verbose: bool = False) -> Calibration:
    """Sweep all 2^N inputs and place one threshold per output.

    The threshold is the dB midpoint between the weakest high and the
    strongest low (min(high)/2 when every low is dark).

    Raises:
        NonSeparableError: If some output's levels overlap.
        ValueError: If N exceeds the sweepable range.
    """
    return simulator_for(cfg).calibrate(verbose=verbose)


def confusion_matrix(cfg: PlaConfig | PlaSimulator, verbose: bool = False) -> np.ndarray:
    """2^N x 2^N matrix of waveshaper-input channel powers (dBm)."""
    return simulator_for(cfg).confusion_matrix(verbose=verbose)


def diagonal_margins(matrix: np.ndarray) -> np.ndarray:
    """Per-row gap (dB) between the diagonal and the strongest off-diagonal cell."""
    size = matrix.shape[0]
    diagonal = np.diag(matrix).copy()
    off = matrix.astype(float).copy()
    off[np.arange(size), np.arange(size)] = -np.inf
    strongest = off.max(axis=1)
    with np.errstate(invalid="ignore"):
        return np.where(np.isneginf(strongest), np.inf, diagonal - strongest)


def configure(
    tables: Sequence[TruthTable],
    base: PlaConfig | None = None,
    wavelength_operands: int | None = None,
) -> PlaConfig:
    """Program ``tables`` into a configuration.

    Args:
        tables: Functions, all over the same operand count N.
        base: Layout to program. Defaults to the built-in layout re-gridded
            for N operands (``wavelength_operands`` of them on the grid).
        wavelength_operands: Only used without ``base``.

    Returns:
        A PlaConfig whose outputs realize ``tables`` (via a spatial plan when
        the layout has spatial operands).
    """
    if not tables:
        raise ValueError("Need at least one function to configure")
    n = tables[0].input_count
    if any(tt.input_count != n for tt in tables):
        raise ValueError("All functions in a bundle must share the operand count")

    if base is None:
        base = resize_config(PlaConfig(), n, wavelength_operands)
    elif base.operand_count != n:
        raise ValueError(
            f"Configuration has {base.operand_count} operands but the functions have {n}"
        )

    if base.spatial_operands == 0:
        outputs = [
            OutputSpec(name=tt.name, mask_hex=compile_mask(tt, base.wavelength_grid()).to_hex())
            for tt in tables
        ]
    else:
        plan = plan_spatial(n, base.wavelength_operands, tables)
        outputs = [
            OutputSpec(name=name, port_masks=[m.to_hex() for m in ports])
            for name, ports in zip(plan.output_names, plan.port_masks)
        ]
    return base.model_copy(update={"outputs": outputs})
