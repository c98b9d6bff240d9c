"""Wavelength + space expansion planning.

The first ``N_w`` operands drive spectral-modulator stages; the remaining
``d`` operands drive a depth-``d`` tree of 1x2 switches whose ``2^d`` output
ports each carry the full wavelength minterm set conjoined with one literal
pattern of the spatial operands. Spatial operands occupy the least
significant positions of the global minterm index::

    global = channel * 2^d + port

where ``port`` is the d-bit value of operands N_w+1..N_w+d (operand N_w+1
most significant; a 1 routes to the upper port of its switch level).
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from wavepla.channels import MAX_OPERANDS, ChannelMask, channel_index, minterm_of_channel
from wavepla.synthesis.tables import TruthTable


@dataclass(frozen=True)
class SpatialPlan:
    """Port layout and per-(output, port) waveshaper masks."""

    wavelength_operands: int
    spatial_operands: int
    output_names: tuple[str, ...]
    port_masks: tuple[tuple[ChannelMask, ...], ...]

    @property
    def total_operands(self) -> int:
        return self.wavelength_operands + self.spatial_operands

    @property
    def port_count(self) -> int:
        return 2**self.spatial_operands

    @property
    def channel_count(self) -> int:
        return 2**self.wavelength_operands

    def port_assignment(self, port: int) -> tuple[int, ...]:
        """Values of operands N_w+1..N_w+d routed to ``port``."""
        if not 0 <= port < self.port_count:
            raise ValueError(f"Port {port} outside [0, {self.port_count})")
        if self.spatial_operands == 0:
            return ()
        return minterm_of_channel(port, self.spatial_operands)

    def global_minterm(self, port: int, channel: int) -> int:
        return channel * self.port_count + port

    def cell_table(self) -> np.ndarray:
        """Global minterm index of every (port, channel) cell."""
        ports = np.arange(self.port_count)[:, None]
        channels = np.arange(self.channel_count)[None, :]
        return channels * self.port_count + ports

    def locate(self, x: Sequence[int]) -> tuple[int, int]:
        """(port, channel) carrying the minterm of input vector ``x``."""
        if len(x) != self.total_operands:
            raise ValueError(f"Expected {self.total_operands} input bits, got {len(x)}")
        n_w = self.wavelength_operands
        port = channel_index(x[n_w:]) if self.spatial_operands else 0
        return port, channel_index(x[:n_w])

    def lookup(self, output: int, x: Sequence[int]) -> int:
        """Function value of output ``output`` read through the plan."""
        port, channel = self.locate(x)
        return int(self.port_masks[output][port].bits[channel])


def plan_spatial(
    total_operands: int,
    wavelength_operands: int,
    functions: Sequence[TruthTable],
) -> SpatialPlan:
    """Split ``functions`` over wavelength channels and switch-tree ports.

    Args:
        total_operands: N_tot, operand count of every function.
        wavelength_operands: N_w operands handled by spectral modulators.
        functions: Truth tables over N_tot inputs.

    Returns:
        SpatialPlan with one mask per (output, port).

    Raises:
        ValueError: If N_tot <= N_w, N_w < 1, or a table has the wrong size.
    """
    if wavelength_operands < 1:
        raise ValueError(f"Need at least one wavelength operand, got {wavelength_operands}")
    if total_operands <= wavelength_operands:
        raise ValueError(
            f"total_operands ({total_operands}) must exceed wavelength_operands "
            f"({wavelength_operands})"
        )
    if total_operands > MAX_OPERANDS:
        raise ValueError(f"total_operands exceeds {MAX_OPERANDS}")

    d = total_operands - wavelength_operands
    masks = []
    for tt in functions:
        if tt.input_count != total_operands:
            raise ValueError(
                f"Function {tt.name!r} has {tt.input_count} inputs, expected {total_operands}"
            )
        # rows: channel, columns: port
        grid = tt.outputs.reshape(2**wavelength_operands, 2**d)
        masks.append(tuple(ChannelMask(grid[:, port]) for port in range(2**d)))

    return SpatialPlan(
        wavelength_operands=wavelength_operands,
        spatial_operands=d,
        output_names=tuple(tt.name for tt in functions),
        port_masks=tuple(masks),
    )
