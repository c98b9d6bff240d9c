"""Cellular automata on the nine-input PLA."""

from wavepla.life.engine import (
    CellGrid,
    conway_truth_table,
    direct_run,
    direct_step,
    lookup_step,
    rule_config,
    run,
    step,
)

__all__ = [
    "CellGrid",
    "conway_truth_table",
    "direct_run",
    "direct_step",
    "lookup_step",
    "rule_config",
    "run",
    "step",
]
