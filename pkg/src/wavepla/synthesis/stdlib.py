"""Standard function generators.

Arithmetic functions take eight operands in the order (A4, A3, A2, A1, B4,
B3, B2, B1), A4 on stage 1, so channel ``c`` encodes ``a = c >> 4`` and
``b = c & 15``. Multi-bit results are listed most significant output first.
"""

import re
from typing import Callable, Sequence

import numpy as np

from wavepla.channels import MAX_OPERANDS
from wavepla.synthesis.tables import TruthTable

_OPERANDS_4X4 = 8


def _operand_pairs() -> tuple[np.ndarray, np.ndarray]:
    c = np.arange(2**_OPERANDS_4X4)
    return c >> 4, c & 15


def decoder(n: int = 8) -> list[TruthTable]:
    """n-to-2^n decoder: output ``m<k>`` is 1 only for input state k."""
    if not 1 <= n <= MAX_OPERANDS:
        raise ValueError(f"Decoder size must be in [1, {MAX_OPERANDS}], got {n}")
    return [TruthTable.from_minterms(n, [k], name=f"m{k}") for k in range(2**n)]


def comparator4() -> list[TruthTable]:
    """4-bit magnitude comparator: A>B, A=B, A<B."""
    a, b = _operand_pairs()
    return [
        TruthTable(_OPERANDS_4X4, a > b, name="A>B"),
        TruthTable(_OPERANDS_4X4, a == b, name="A=B"),
        TruthTable(_OPERANDS_4X4, a < b, name="A<B"),
    ]


def _binary_outputs(values: np.ndarray, width: int) -> list[TruthTable]:
    return [
        TruthTable(_OPERANDS_4X4, (values >> (k - 1)) & 1, name=f"O{k}")
        for k in range(width, 0, -1)
    ]


def adder4() -> list[TruthTable]:
    """4-bit adder: O5..O1 with (O5...O1)_2 = a + b."""
    a, b = _operand_pairs()
    return _binary_outputs(a + b, 5)


def multiplier4() -> list[TruthTable]:
    """4-bit multiplier: O8..O1 with (O8...O1)_2 = a * b."""
    a, b = _operand_pairs()
    return _binary_outputs(a * b, 8)


def bitmap_truth_table(rows: Sequence[Sequence[int]], name: str = "bitmap") -> TruthTable:
    """Arbitrary function drawn as a 2^r x 2^k bitmap.

    The row index is the value of the leading r operands and the column index
    the value of the trailing k operands, so a 16x16 picture programs an
    8-input function (rows I8..I5, columns I4..I1).
    """
    bitmap = np.asarray(rows)
    if bitmap.ndim != 2 or 0 in bitmap.shape:
        raise ValueError("Bitmap must be a non-empty two-dimensional array")
    height, width = bitmap.shape
    for size in (height, width):
        if size & (size - 1):
            raise ValueError(f"Bitmap dimensions must be powers of two, got {height}x{width}")
    n = (height * width).bit_length() - 1
    if n < 1:
        raise ValueError("Bitmap must hold at least two cells")
    if not np.isin(bitmap, (0, 1)).all():
        raise ValueError("Bitmap cells must be 0 or 1")
    return TruthTable(n, bitmap.reshape(-1).astype(bool), name=name)


def decode_outputs(bits: Sequence[int]) -> int:
    """Integer value of output bits listed most significant first."""
    value = 0
    for bit in bits:
        value = (value << 1) | int(bool(bit))
    return value


# Registry of available functions
FUNCTIONS: dict[str, Callable[[], list[TruthTable]]] = {
    "comparator4": comparator4,
    "adder4": adder4,
    "multiplier4": multiplier4,
}

_DECODER_NAME = re.compile(r"^decoder(?::?(\d+))?$")


def is_stdlib_name(name: str) -> bool:
    return name in FUNCTIONS or _DECODER_NAME.match(name) is not None


def stdlib_function(name: str, decoder_size: int = 8) -> list[TruthTable]:
    """Get a standard function bundle by name.

    Args:
        name: "comparator4", "adder4", "multiplier4", or "decoder" with an
            optional size ("decoder3", "decoder:3").
        decoder_size: Size used for a bare "decoder".

    Returns:
        List of named truth tables, one per output.

    Raises:
        ValueError: If the name is unknown.
    """
    match = _DECODER_NAME.match(name)
    if match is not None:
        return decoder(int(match.group(1)) if match.group(1) else decoder_size)
    if name not in FUNCTIONS:
        raise ValueError(
            f"Unknown function: {name}. "
            f"Available: {['decoder'] + list(FUNCTIONS.keys())}"
        )
    return FUNCTIONS[name]()
