"""Wavelength-channel address space.

Channel ``c`` of an N-operand array carries the minterm whose input vector
``(x_1 ... x_N)`` reads ``c`` in binary, operand 1 being the most significant
bit. Spectral-modulator stage ``j`` passes its '+' set (bit ``N - j`` of the
channel index equal to 1) when its operand is 1 and the complementary '-' set
otherwise, so after N stages exactly one channel survives.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_OPERANDS = 20

InputVector = tuple[int, ...]


def _check_operand_count(n: int) -> None:
    if not 1 <= n <= MAX_OPERANDS:
        raise ValueError(f"Operand count must be in [1, {MAX_OPERANDS}], got {n}")


def is_power_of_two(value: int) -> bool:
    """Return True for 1, 2, 4, 8, ..."""
    return value > 0 and value & (value - 1) == 0


@dataclass(frozen=True)
class WavelengthGrid:
    """Ordered set of equally spaced wavelength channels.

    Channel ``c`` sits at ``start_wavelength + c * spacing`` (nm).
    """

    channel_count: int
    start_wavelength: float = 1530.0
    spacing: float = 0.15

    def __post_init__(self) -> None:
        if self.channel_count < 1:
            raise ValueError(f"channel_count must be positive, got {self.channel_count}")
        if self.spacing <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.start_wavelength <= 0:
            raise ValueError(f"start_wavelength must be positive, got {self.start_wavelength}")

    @classmethod
    def for_operands(
        cls,
        n: int,
        start_wavelength: float = 1530.0,
        spacing: float = 0.15,
    ) -> "WavelengthGrid":
        """Grid with 2^n channels for an n-operand wavelength array."""
        _check_operand_count(n)
        return cls(2**n, start_wavelength, spacing)

    @property
    def operand_count(self) -> int:
        """Number of spectral-modulator stages this grid can address."""
        if not is_power_of_two(self.channel_count):
            raise ValueError(
                f"channel_count {self.channel_count} is not a power of two; "
                "it cannot host a full programmable logic array"
            )
        return self.channel_count.bit_length() - 1

    def wavelengths(self) -> np.ndarray:
        """Centre wavelength of every channel in nm, strictly increasing."""
        return self.start_wavelength + self.spacing * np.arange(self.channel_count)

    def frequencies_ghz(self) -> np.ndarray:
        """Centre optical frequency of every channel in GHz."""
        from wavepla.synthesis.capacity import SPEED_OF_LIGHT_NM_GHZ

        return SPEED_OF_LIGHT_NM_GHZ / self.wavelengths()


def wavelengths(grid: WavelengthGrid) -> np.ndarray:
    """Centre wavelengths (nm) of ``grid``."""
    return grid.wavelengths()


class ChannelMask:
    """Pass/block pattern over the channels of a grid (1 = pass)."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[int] | np.ndarray):
        array = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("ChannelMask needs a non-empty one-dimensional bit vector")
        if array.dtype != bool:
            if not np.isin(array, (0, 1)).all():
                raise ValueError("ChannelMask bits must be 0 or 1")
            array = array.astype(bool)
        array = array.copy()
        array.setflags(write=False)
        self._bits = array

    @classmethod
    def full(cls, channel_count: int) -> "ChannelMask":
        return cls(np.ones(channel_count, dtype=bool))

    @classmethod
    def empty(cls, channel_count: int) -> "ChannelMask":
        return cls(np.zeros(channel_count, dtype=bool))

    @classmethod
    def from_channels(cls, channels: Iterable[int], channel_count: int) -> "ChannelMask":
        """Mask passing exactly ``channels``."""
        bits = np.zeros(channel_count, dtype=bool)
        for c in channels:
            if not 0 <= c < channel_count:
                raise ValueError(f"Channel {c} outside [0, {channel_count})")
            bits[c] = True
        return cls(bits)

    @classmethod
    def from_hex(cls, text: str, channel_count: int) -> "ChannelMask":
        """Decode a lowercase hex string, least-significant bit = channel 0."""
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        if not text:
            raise ValueError("Empty hex mask")
        try:
            value = int(text, 16)
        except ValueError as e:
            raise ValueError(f"Invalid hex mask: {text!r}") from e
        if value >> channel_count:
            raise ValueError(f"Hex mask {text!r} sets channels beyond {channel_count}")
        bits = np.array([(value >> c) & 1 for c in range(channel_count)], dtype=bool)
        return cls(bits)

    @property
    def bits(self) -> np.ndarray:
        """Read-only boolean view."""
        return self._bits

    @property
    def popcount(self) -> int:
        return int(self._bits.sum())

    def channels(self) -> list[int]:
        """Indices of passed channels, ascending."""
        return [int(c) for c in np.flatnonzero(self._bits)]

    def complement(self) -> "ChannelMask":
        return ChannelMask(~self._bits)

    def lookup(self, x: Sequence[int]) -> int:
        """Mask bit of the channel addressed by input vector ``x``."""
        return int(self._bits[channel_index(x)])

    def to_hex(self) -> str:
        """Lowercase hex, least-significant bit = channel 0, ceil(len/4) digits."""
        value = 0
        for c in np.flatnonzero(self._bits):
            value |= 1 << int(c)
        digits = max(1, -(-len(self) // 4))
        return format(value, f"0{digits}x")

    def __len__(self) -> int:
        return int(self._bits.size)

    def __and__(self, other: "ChannelMask") -> "ChannelMask":
        self._check_same_length(other)
        return ChannelMask(self._bits & other._bits)

    def __or__(self, other: "ChannelMask") -> "ChannelMask":
        self._check_same_length(other)
        return ChannelMask(self._bits | other._bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChannelMask):
            return NotImplemented
        return bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __repr__(self) -> str:
        return f"ChannelMask(len={len(self)}, hex={self.to_hex()})"

    def _check_same_length(self, other: "ChannelMask") -> None:
        if len(self) != len(other):
            raise ValueError(f"Mask length mismatch: {len(self)} vs {len(other)}")


def as_input_vector(bits: Sequence[int] | str) -> InputVector:
    """Normalize ``bits`` (sequence of 0/1 or a string like "1001") to a tuple."""
    if isinstance(bits, str):
        text = bits.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"Input bits must be a non-empty string of 0/1, got {bits!r}")
        return tuple(int(ch) for ch in text)
    vector = tuple(int(b) for b in bits)
    if not vector:
        raise ValueError("Input vector must not be empty")
    if any(b not in (0, 1) for b in vector):
        raise ValueError(f"Input bits must be 0 or 1, got {vector}")
    return vector


def channel_index(x: Sequence[int]) -> int:
    """Channel carrying the minterm of ``x``: sum of x_j * 2^(N - j)."""
    c = 0
    for bit in x:
        c = (c << 1) | (1 if bit else 0)
    return c


def minterm_of_channel(c: int, n: int) -> InputVector:
    """Input vector whose minterm sits on channel ``c`` of an n-operand grid."""
    _check_operand_count(n)
    if not 0 <= c < 2**n:
        raise ValueError(f"Channel {c} outside [0, {2**n})")
    return tuple((c >> (n - j)) & 1 for j in range(1, n + 1))


def _stage_bits(j: int, n: int) -> np.ndarray:
    _check_operand_count(n)
    if not 1 <= j <= n:
        raise ValueError(f"Stage {j} outside [1, {n}]")
    return ((np.arange(2**n) >> (n - j)) & 1).astype(bool)


def plus_set(j: int, n: int) -> ChannelMask:
    """'+' partition of stage ``j``: square wave of block size 2^(N - j)."""
    return ChannelMask(_stage_bits(j, n))


def literal_mask(j: int, bit: int, n: int) -> ChannelMask:
    """Channels passed by stage ``j`` when its operand equals ``bit``."""
    bits = _stage_bits(j, n)
    return ChannelMask(bits if bit else ~bits)


def minterm_mask(x: Sequence[int]) -> ChannelMask:
    """Intersection of every stage's selected partition for input ``x``."""
    n = len(x)
    result = ChannelMask.full(2**n)
    for j, bit in enumerate(x, start=1):
        result = result & literal_mask(j, bit, n)
    return result
