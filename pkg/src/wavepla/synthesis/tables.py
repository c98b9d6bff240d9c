"""Truth tables, the synthesis IR, and their file formats.

Truth-table file::

    N=<int>
    <hex bitmask, least-significant bit = channel 0>

Function bundle: JSON list of ``{"name": ..., "truth_table_hex": ...}``.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from wavepla.channels import MAX_OPERANDS, ChannelMask, WavelengthGrid, channel_index, minterm_of_channel


@dataclass(frozen=True, eq=False)
class TruthTable:
    """N-input single-output Boolean function; ``outputs[c] = f(minterm c)``."""

    input_count: int
    outputs: np.ndarray
    name: str = "f"

    def __post_init__(self) -> None:
        if not 1 <= self.input_count <= MAX_OPERANDS:
            raise ValueError(f"input_count must be in [1, {MAX_OPERANDS}], got {self.input_count}")
        outputs = np.asarray(self.outputs)
        if outputs.shape != (2**self.input_count,):
            raise ValueError(
                f"Truth table over {self.input_count} inputs needs {2**self.input_count} "
                f"entries, got shape {outputs.shape}"
            )
        outputs = outputs.astype(bool)
        outputs.setflags(write=False)
        object.__setattr__(self, "outputs", outputs)

    @classmethod
    def from_function(
        cls,
        input_count: int,
        fn: Callable[[tuple[int, ...]], int],
        name: str = "f",
    ) -> "TruthTable":
        """Tabulate ``fn`` over every input vector in channel order."""
        bits = [bool(fn(minterm_of_channel(c, input_count))) for c in range(2**input_count)]
        return cls(input_count, np.array(bits, dtype=bool), name=name)

    @classmethod
    def from_minterms(cls, input_count: int, minterms: Iterable[int], name: str = "f") -> "TruthTable":
        outputs = np.zeros(2**input_count, dtype=bool)
        outputs[list(minterms)] = True
        return cls(input_count, outputs, name=name)

    @classmethod
    def from_hex(cls, input_count: int, text: str, name: str = "f") -> "TruthTable":
        mask = ChannelMask.from_hex(text, 2**input_count)
        return cls(input_count, mask.bits, name=name)

    def lookup(self, x: Sequence[int]) -> int:
        if len(x) != self.input_count:
            raise ValueError(f"Expected {self.input_count} input bits, got {len(x)}")
        return int(self.outputs[channel_index(x)])

    @property
    def popcount(self) -> int:
        return int(self.outputs.sum())

    def minterms(self) -> list[int]:
        return [int(c) for c in np.flatnonzero(self.outputs)]

    def complement(self) -> "TruthTable":
        return TruthTable(self.input_count, ~self.outputs, name=f"~{self.name}")

    def to_hex(self) -> str:
        return ChannelMask(self.outputs).to_hex()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.input_count == other.input_count and bool(
            np.array_equal(self.outputs, other.outputs)
        )


def compile_mask(tt: TruthTable, grid: WavelengthGrid | None = None) -> ChannelMask:
    """Waveshaper mask realizing ``tt``: the truth table in channel order."""
    if grid is not None and grid.channel_count != len(tt.outputs):
        raise ValueError(
            f"Truth table has {len(tt.outputs)} entries but the grid has "
            f"{grid.channel_count} channels"
        )
    return ChannelMask(tt.outputs)


def save_truth_table(tt: TruthTable, path: str | Path) -> None:
    """Write the two-line truth-table file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(f"N={tt.input_count}\n{tt.to_hex()}\n", encoding="utf-8")


def load_truth_table(path: str | Path, name: str | None = None) -> TruthTable:
    """Read a truth-table file; the table is named after the file stem by default."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Truth table file not found: {path}")
    lines = [line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if len(lines) != 2 or not lines[0].startswith("N="):
        raise ValueError(f"{path}: expected 'N=<int>' followed by a hex line")
    try:
        n = int(lines[0][2:])
    except ValueError as e:
        raise ValueError(f"{path}: invalid operand count {lines[0]!r}") from e
    return TruthTable.from_hex(n, lines[1], name=name or path.stem)


def save_bundle(tables: Sequence[TruthTable], path: str | Path) -> None:
    """Write a JSON function bundle."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = [{"name": tt.name, "truth_table_hex": tt.to_hex()} for tt in tables]
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_bundle(path: str | Path, input_count: int | None = None) -> list[TruthTable]:
    """Read a JSON function bundle.

    The operand count is taken from ``input_count`` or inferred from the hex
    length (4 channels per digit). A single digit fits both N=1 and N=2, so
    such entries need ``input_count``.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Bundle file not found: {path}")
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, list) or not data:
        raise ValueError(f"{path}: bundle must be a non-empty JSON list")
    tables = []
    for entry in data:
        if set(entry) != {"name", "truth_table_hex"}:
            raise ValueError(f"{path}: bundle entries need exactly 'name' and 'truth_table_hex'")
        text = entry["truth_table_hex"]
        n = input_count if input_count is not None else _infer_operands(text)
        tables.append(TruthTable.from_hex(n, text, name=entry["name"]))
    return tables


def _infer_operands(hex_text: str) -> int:
    digits = len(hex_text.strip())
    channels = digits * 4
    if channels & (channels - 1):
        raise ValueError(f"Hex length {digits} does not correspond to 2^N channels")
    if digits == 1:
        raise ValueError(
            f"Hex {hex_text.strip()!r} is ambiguous between 1 and 2 operands; give the operand count"
        )
    return channels.bit_length() - 1
