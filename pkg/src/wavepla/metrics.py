"""Power-level metrics: dB conversions, extinction ratio, decision thresholds."""

import math
from typing import Iterable

import numpy as np


def db_to_linear(db: float | np.ndarray) -> float | np.ndarray:
    """Convert a dB ratio to a linear power ratio."""
    result = 10.0 ** (np.asarray(db, dtype=float) / 10.0)
    if np.ndim(result) == 0:
        return float(result)
    return result


def dbm_to_mw(dbm: float | np.ndarray) -> float | np.ndarray:
    """Convert absolute power from dBm to mW."""
    return db_to_linear(dbm)


def mw_to_dbm(mw: float | np.ndarray) -> float | np.ndarray:
    """Convert absolute power from mW to dBm; 0 mW maps to -inf.

    Args:
        mw: Power in milliwatts (scalar or array).

    Returns:
        Power in dBm, same shape as the input.
    """
    with np.errstate(divide="ignore"):
        result = 10.0 * np.log10(np.asarray(mw, dtype=float))
    if np.ndim(result) == 0:
        return float(result)
    return result


def extinction_ratio(
    high_levels: Iterable[float],
    low_levels: Iterable[float],
) -> float:
    """Compute the extinction ratio between logic-high and logic-low powers.

    Args:
        high_levels: Powers (mW) observed for logic 1.
        low_levels: Powers (mW) observed for logic 0.

    Returns:
        10*log10(min(high) / max(low)) in dB; +inf if every low is 0 mW.

    Raises:
        ValueError: If either set is empty or min(high) is not positive.
    """
    highs = np.asarray(list(high_levels), dtype=float)
    lows = np.asarray(list(low_levels), dtype=float)

    if highs.size == 0 or lows.size == 0:
        raise ValueError("Extinction ratio needs non-empty high and low level sets")

    min_high = float(highs.min())
    max_low = float(lows.max())

    if min_high <= 0:
        raise ValueError(f"Lowest high level must be positive, got {min_high} mW")

    if max_low == 0:
        return math.inf

    return 10.0 * math.log10(min_high / max_low)


def decision_threshold(
    high_levels: Iterable[float],
    low_levels: Iterable[float],
) -> tuple[float, float]:
    """Pick the decision threshold separating high and low power levels.

    The threshold is the geometric mean of min(high) and max(low), i.e. the
    midpoint in dB. When every low is 0 mW the threshold falls back to
    min(high)/2. Degenerate sets (no highs or no lows) give a margin of +inf.

    Args:
        high_levels: Powers (mW) that must decide as 1.
        low_levels: Powers (mW) that must decide as 0.

    Returns:
        Tuple of (threshold_mw, margin_db). A margin <= 0 dB means the levels
        overlap and no threshold separates them.
    """
    highs = np.asarray(list(high_levels), dtype=float)
    lows = np.asarray(list(low_levels), dtype=float)

    if highs.size == 0 and lows.size == 0:
        raise ValueError("Cannot place a threshold without any levels")

    if highs.size == 0:
        max_low = float(lows.max())
        return 2.0 * max_low, math.inf

    min_high = float(highs.min())
    if lows.size == 0:
        return min_high / 2.0, math.inf

    max_low = float(lows.max())
    if min_high <= max_low:
        margin = -math.inf if min_high <= 0 else 10.0 * math.log10(min_high / max_low)
        return math.sqrt(min_high * max_low), margin

    if max_low == 0:
        return min_high / 2.0, math.inf

    return math.sqrt(min_high * max_low), 10.0 * math.log10(min_high / max_low)


def format_db(value: float) -> str:
    """Fixed two-decimal dB/dBm rendering, -inf/inf spelled out."""
    if math.isinf(value):
        return "-inf" if value < 0 else "inf"
    return f"{value:.2f}"


def format_mw(value: float) -> str:
    """Four-significant-figure mW rendering."""
    return f"{value:.4g}"
