"""Two-dimensional cellular automata driven by a nine-input PLA.

Each cell's neighbourhood is read row-major as operands I_1..I_9 =
(NW, N, NE, W, C, E, SW, S, SE), so I_5 is the cell itself. The
neighbourhood index ``sum(I_j * 2^(9 - j))`` addresses the rule table.
"""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from tqdm import tqdm

from wavepla.config import DeviceParams, PlaConfig, resize_config
from wavepla.simulator import PlaSimulator, configure, simulator_for
from wavepla.synthesis.tables import TruthTable

log = logging.getLogger(__name__)

Boundary = Literal["dead", "toroidal"]

NEIGHBORHOOD_OPERANDS = 9
CENTER_OPERAND = 5
NEIGHBORHOOD_ORDER = ("NW", "N", "NE", "W", "C", "E", "SW", "S", "SE")

# (row, column) offset of operand I_1..I_9
_OFFSETS = [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1)]


@dataclass(frozen=True, eq=False)
class CellGrid:
    """Binary cell field (1 = live) with its boundary handling."""

    cells: np.ndarray
    boundary: Boundary = "dead"

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells)
        if cells.ndim != 2 or min(cells.shape) < 3:
            raise ValueError(f"CellGrid must be at least 3x3, got shape {cells.shape}")
        if not np.isin(cells, (0, 1)).all():
            raise ValueError("Cells must be 0 or 1")
        if self.boundary not in ("dead", "toroidal"):
            raise ValueError(f"Unknown boundary mode: {self.boundary}")
        cells = cells.astype(np.uint8)
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def empty(cls, height: int, width: int, boundary: Boundary = "dead") -> "CellGrid":
        return cls(np.zeros((height, width), dtype=np.uint8), boundary)

    @property
    def height(self) -> int:
        return int(self.cells.shape[0])

    @property
    def width(self) -> int:
        return int(self.cells.shape[1])

    @property
    def population(self) -> int:
        return int(self.cells.sum())

    def with_cells(self, cells: np.ndarray) -> "CellGrid":
        return CellGrid(cells, self.boundary)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellGrid):
            return NotImplemented
        return self.boundary == other.boundary and bool(np.array_equal(self.cells, other.cells))

    def __str__(self) -> str:
        return "\n".join("".join("O" if v else "." for v in row) for row in self.cells)


def _padded(g: CellGrid) -> np.ndarray:
    mode = "wrap" if g.boundary == "toroidal" else "constant"
    return np.pad(g.cells, 1, mode=mode)


def neighborhood_indices(g: CellGrid) -> np.ndarray:
    """Rule-table index of every cell's ordered neighbourhood."""
    padded = _padded(g).astype(np.int64)
    h, w = g.height, g.width
    index = np.zeros((h, w), dtype=np.int64)
    for j, (dr, dc) in enumerate(_OFFSETS, start=1):
        shifted = padded[1 + dr : 1 + dr + h, 1 + dc : 1 + dc + w]
        index |= shifted << (NEIGHBORHOOD_OPERANDS - j)
    return index


def conway_truth_table() -> TruthTable:
    """Game of Life rule: born on 3 live neighbours, survives on 2 or 3."""

    def rule(x: tuple[int, ...]) -> int:
        center = x[CENTER_OPERAND - 1]
        neighbors = sum(x) - center
        return int(neighbors == 3 or (center == 1 and neighbors == 2))

    return TruthTable.from_function(NEIGHBORHOOD_OPERANDS, rule, name="next")


def rule_config(table: TruthTable | None = None, params: DeviceParams | None = None) -> PlaConfig:
    """Nine-operand layout (8 wavelength stages + 1 switch) programmed with ``table``."""
    table = table if table is not None else conway_truth_table()
    if table.input_count != NEIGHBORHOOD_OPERANDS:
        raise ValueError(f"Rule table needs {NEIGHBORHOOD_OPERANDS} inputs, got {table.input_count}")
    base = PlaConfig(params=params) if params is not None else PlaConfig()
    base = resize_config(base, NEIGHBORHOOD_OPERANDS, NEIGHBORHOOD_OPERANDS - 1)
    return configure([table], base)


def _rule_decisions(pla9: PlaConfig | PlaSimulator) -> np.ndarray:
    sim = simulator_for(pla9)
    if sim.operand_count != NEIGHBORHOOD_OPERANDS:
        raise ValueError(
            f"Cellular automaton needs a {NEIGHBORHOOD_OPERANDS}-operand PLA, "
            f"got {sim.operand_count}"
        )
    if len(sim.output_names) != 1:
        raise ValueError(f"Rule PLA must have exactly one output, got {len(sim.output_names)}")
    return sim.decision_table()[:, 0]


def step(g: CellGrid, pla9: PlaConfig | PlaSimulator) -> CellGrid:
    """Next generation, each cell decided by the simulated PLA."""
    decisions = _rule_decisions(pla9)
    return g.with_cells(decisions[neighborhood_indices(g)].astype(np.uint8))


def lookup_step(g: CellGrid, table: TruthTable) -> CellGrid:
    """Next generation read straight from a rule table, no optics."""
    if table.input_count != NEIGHBORHOOD_OPERANDS:
        raise ValueError(f"Rule table needs {NEIGHBORHOOD_OPERANDS} inputs, got {table.input_count}")
    return g.with_cells(table.outputs[neighborhood_indices(g)].astype(np.uint8))


def direct_step(g: CellGrid) -> CellGrid:
    """Textbook Game of Life update with the same boundary mode."""
    padded = _padded(g).astype(np.int64)
    h, w = g.height, g.width
    neighbors = sum(
        padded[1 + dr : 1 + dr + h, 1 + dc : 1 + dc + w]
        for dr, dc in _OFFSETS
        if (dr, dc) != (0, 0)
    )
    alive = g.cells == 1
    born = (~alive) & (neighbors == 3)
    survives = alive & ((neighbors == 2) | (neighbors == 3))
    return g.with_cells((born | survives).astype(np.uint8))


def run(
    g: CellGrid,
    steps: int,
    pla9: PlaConfig | PlaSimulator,
    verbose: bool = False,
) -> list[CellGrid]:
    """Evolve ``g`` for ``steps`` generations; trace[0] is ``g``."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    sim = simulator_for(pla9)
    trace = [g]
    for _ in tqdm(range(steps), disable=not verbose, desc="Generations"):
        trace.append(step(trace[-1], sim))
    log.info("Ran %d generations, final population %d", steps, trace[-1].population)
    return trace


def direct_run(g: CellGrid, steps: int) -> list[CellGrid]:
    """Oracle trace using direct_step."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    trace = [g]
    for _ in range(steps):
        trace.append(direct_step(trace[-1]))
    return trace
