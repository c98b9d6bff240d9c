"""Tests for wavelength + space expansion planning."""

import itertools

import numpy as np
import pytest

from wavepla.channels import channel_index
from wavepla.life.engine import conway_truth_table
from wavepla.synthesis import TruthTable, compile_expr, plan_spatial


class TestPlanSpatial:
    """Tests for plan_spatial."""

    def test_nine_inputs_matches_table(self):
        """Reading through the plan reproduces the rule for all 512 inputs."""
        tt = conway_truth_table()
        plan = plan_spatial(9, 8, [tt])
        assert plan.port_count == 2
        for x in itertools.product((0, 1), repeat=9):
            assert plan.lookup(0, x) == tt.lookup(x)

    def test_global_index_bijection(self):
        """4 inputs on 2 stages + 2 switches: cells cover every minterm once."""
        plan = plan_spatial(4, 2, [TruthTable.from_minterms(4, [0])])
        cells = plan.cell_table()
        assert cells.shape == (4, 4)
        assert sorted(cells.reshape(-1).tolist()) == list(range(16))

    def test_locate_agrees_with_global_index(self):
        """locate inverts the global minterm index."""
        plan = plan_spatial(4, 2, [TruthTable.from_minterms(4, [0])])
        for x in itertools.product((0, 1), repeat=4):
            port, channel = plan.locate(x)
            assert plan.global_minterm(port, channel) == channel_index(x)

    def test_port_assignment(self):
        """Spatial operands pick the port, most significant first."""
        plan = plan_spatial(5, 3, [TruthTable.from_minterms(5, [0])])
        assert plan.port_assignment(0) == (0, 0)
        assert plan.port_assignment(2) == (1, 0)
        with pytest.raises(ValueError):
            plan.port_assignment(4)

    def test_multiple_outputs(self):
        """Each output gets its own set of port masks."""
        variables = ["A", "B", "C", "D", "E"]
        tables = [
            compile_expr("A ^ E", variables, name="x"),
            compile_expr("B & D & E", variables, name="y"),
        ]
        plan = plan_spatial(5, 3, tables)
        assert plan.output_names == ("x", "y")
        for x in itertools.product((0, 1), repeat=5):
            assert [plan.lookup(k, x) for k in range(2)] == [tt.lookup(x) for tt in tables]

    def test_masks_partition_table(self):
        """Port masks together hold exactly the table's minterms."""
        tt = TruthTable.from_minterms(6, [1, 7, 30, 63])
        plan = plan_spatial(6, 4, [tt])
        total = sum(int(np.sum(m.bits)) for m in plan.port_masks[0])
        assert total == tt.popcount

    def test_rejects_no_spatial_operands(self):
        """A plan needs at least one spatial operand."""
        with pytest.raises(ValueError):
            plan_spatial(3, 3, [TruthTable.from_minterms(3, [0])])

    def test_rejects_mismatched_table(self):
        """Tables must match the planned operand count."""
        with pytest.raises(ValueError):
            plan_spatial(4, 2, [TruthTable.from_minterms(3, [0])])
