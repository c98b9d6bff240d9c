"""Tests for truth tables, standard functions and their file formats."""

import json

import numpy as np
import pytest

from wavepla.channels import WavelengthGrid, channel_index
from wavepla.synthesis import (
    TruthTable,
    adder4,
    bitmap_truth_table,
    comparator4,
    compile_mask,
    decode_outputs,
    decoder,
    is_stdlib_name,
    load_bundle,
    load_truth_table,
    multiplier4,
    save_bundle,
    save_truth_table,
    stdlib_function,
)


def operands(a: int, b: int) -> tuple[int, ...]:
    bits = f"{a:04b}{b:04b}"
    return tuple(int(ch) for ch in bits)


class TestTruthTable:
    """Tests for the TruthTable type."""

    def test_wrong_size(self):
        """The output vector must have 2^N entries."""
        with pytest.raises(ValueError):
            TruthTable(3, np.zeros(4, dtype=bool))

    def test_from_function(self):
        """Tabulating a function lists its true minterms."""
        tt = TruthTable.from_function(3, lambda x: x[0] and not x[2])
        assert tt.minterms() == [4, 6]

    def test_lookup(self):
        """Lookup reads one entry and checks the width."""
        tt = TruthTable.from_minterms(3, [5])
        assert tt.lookup((1, 0, 1)) == 1
        assert tt.lookup((1, 1, 1)) == 0
        with pytest.raises(ValueError):
            tt.lookup((1, 0))

    def test_hex_round_trip(self):
        """Hex text reloads to an equal table."""
        tt = TruthTable.from_minterms(4, [0, 9, 15])
        assert TruthTable.from_hex(4, tt.to_hex()) == tt

    def test_compile_mask(self):
        """The mask is the table in channel order, sized to the grid."""
        tt = TruthTable.from_minterms(3, [1, 2])
        mask = compile_mask(tt, WavelengthGrid(8))
        assert mask.channels() == [1, 2]
        with pytest.raises(ValueError):
            compile_mask(tt, WavelengthGrid(16))

    def test_mask_popcount_is_table_popcount(self):
        """A mask lights as many channels as the table has minterms."""
        for tt in comparator4() + adder4():
            assert compile_mask(tt).popcount == tt.popcount


class TestStandardFunctions:
    """Tests for comparator, adder, multiplier and decoder."""

    def test_comparator_popcounts(self):
        """A>B and A<B have 120 minterms, A=B has 16."""
        gt, eq, lt = comparator4()
        assert gt.popcount == 120
        assert eq.popcount == 16
        assert lt.popcount == 120

    def test_comparator_names(self):
        """Comparator outputs are named A>B, A=B, A<B."""
        assert [tt.name for tt in comparator4()] == ["A>B", "A=B", "A<B"]

    def test_comparator_values(self):
        """a=9, b=3 gives A>B only."""
        gt, eq, lt = comparator4()
        x = operands(9, 3)
        assert (gt.lookup(x), eq.lookup(x), lt.lookup(x)) == (1, 0, 0)

    def test_comparator_exclusive(self):
        """Exactly one comparator output is high per input."""
        total = sum(tt.outputs.astype(int) for tt in comparator4())
        assert (total == 1).all()

    def test_adder_all_inputs(self):
        """The adder tables add every operand pair."""
        tables = adder4()
        for a in range(16):
            for b in range(16):
                x = operands(a, b)
                assert decode_outputs([tt.lookup(x) for tt in tables]) == a + b

    def test_adder_max(self):
        """15 + 15 is 11110."""
        tables = adder4()
        assert [tt.lookup(operands(15, 15)) for tt in tables] == [1, 1, 1, 1, 0]

    def test_multiplier_all_inputs(self):
        """The multiplier tables multiply every operand pair."""
        tables = multiplier4()
        assert [tt.name for tt in tables] == [f"O{k}" for k in range(8, 0, -1)]
        for a in range(16):
            for b in range(16):
                x = operands(a, b)
                assert decode_outputs([tt.lookup(x) for tt in tables]) == a * b

    def test_multiplier_max(self):
        """15 x 15 decodes to 225."""
        x = operands(15, 15)
        assert decode_outputs([tt.lookup(x) for tt in multiplier4()]) == 225

    def test_decoder(self):
        """Decoder output m<k> is high only on minterm k."""
        tables = decoder(3)
        assert len(tables) == 8
        assert tables[5].name == "m5"
        assert tables[5].minterms() == [5]

    def test_decoder_bounds(self):
        """A decoder needs at least one input."""
        with pytest.raises(ValueError):
            decoder(0)

    def test_registry(self):
        """Names resolve to bundles; unknown names fail."""
        assert is_stdlib_name("adder4")
        assert is_stdlib_name("decoder:4")
        assert not is_stdlib_name("subtractor")
        assert len(stdlib_function("decoder3")) == 8
        assert len(stdlib_function("decoder", decoder_size=2)) == 4
        with pytest.raises(ValueError):
            stdlib_function("subtractor")


class TestBitmap:
    """Tests for bitmap-drawn functions."""

    def test_rows_are_leading_operands(self):
        """The row index is the value of the leading operands."""
        rows = np.zeros((4, 4), dtype=int)
        rows[2, 1] = 1
        tt = bitmap_truth_table(rows)
        assert tt.input_count == 4
        assert tt.minterms() == [channel_index((1, 0, 0, 1))]

    def test_sixteen_by_sixteen(self):
        """A 16 x 16 bitmap is an 8-input function."""
        rows = np.eye(16, dtype=int)
        tt = bitmap_truth_table(rows, name="diag")
        assert tt.input_count == 8
        assert tt.popcount == 16
        assert tt.name == "diag"

    def test_rejects_bad_shape(self):
        """Bitmaps need power-of-two sides and binary cells."""
        with pytest.raises(ValueError):
            bitmap_truth_table(np.zeros((3, 4), dtype=int))
        with pytest.raises(ValueError):
            bitmap_truth_table([[0, 2], [1, 0]])


class TestFiles:
    """Tests for truth-table and bundle files."""

    def test_truth_table_file(self, tmp_path):
        """The truth-table file is N=<n> then hex, and reloads."""
        tt = TruthTable.from_minterms(2, [3], name="and")
        path = tmp_path / "and.tt"
        save_truth_table(tt, path)
        assert path.read_text() == "N=2\n8\n"
        loaded = load_truth_table(path)
        assert loaded == tt
        assert loaded.name == "and"

    def test_truth_table_malformed(self, tmp_path):
        """A file without the N= line is rejected."""
        path = tmp_path / "bad.tt"
        path.write_text("8\n")
        with pytest.raises(ValueError):
            load_truth_table(path)

    def test_missing_file(self, tmp_path):
        """A missing table file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_truth_table(tmp_path / "nope.tt")

    def test_bundle(self, tmp_path):
        """A comparator bundle reloads with 8 operands."""
        path = tmp_path / "cmp.json"
        save_bundle(comparator4(), path)
        data = json.loads(path.read_text())
        assert [entry["name"] for entry in data] == ["A>B", "A=B", "A<B"]
        loaded = load_bundle(path)
        assert [tt.input_count for tt in loaded] == [8, 8, 8]
        assert loaded == comparator4()

    def test_bundle_rejects_extra_keys(self, tmp_path):
        """Bundle entries carry only name and truth_table_hex."""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([{"name": "f", "truth_table_hex": "8", "x": 1}]))
        with pytest.raises(ValueError):
            load_bundle(path)

    def test_one_operand_bundle_needs_count(self, tmp_path):
        """A single hex digit is ambiguous between one and two operands."""
        path = tmp_path / "id.json"
        tt = TruthTable(1, np.array([0, 1]), name="id")
        save_bundle([tt], path)
        with pytest.raises(ValueError):
            load_bundle(path)
        loaded = load_bundle(path, input_count=1)
        assert loaded == [tt]
        assert loaded[0].input_count == 1

    def test_two_operand_bundle_with_count(self, tmp_path):
        """Two-operand bundles load once the operand count is given."""
        path = tmp_path / "and.json"
        save_bundle([TruthTable.from_minterms(2, [3], name="and")], path)
        assert load_bundle(path, input_count=2)[0].minterms() == [3]
