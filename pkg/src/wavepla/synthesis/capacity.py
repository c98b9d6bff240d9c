"""Capacity estimation: how many operands a wavelength band supports."""

import math
from dataclasses import asdict, dataclass
from typing import Any

# c in nm * GHz
SPEED_OF_LIGHT_NM_GHZ = 299_792_458.0


@dataclass(frozen=True)
class CapacityEstimate:
    """Scale of a PLA fitted into a wavelength band."""

    lambda1_nm: float
    lambda2_nm: float
    channel_bandwidth_ghz: float
    delta_f: float
    max_channels: int
    max_operands: int
    modulators_proposed: int
    modulators_eo: int

    @property
    def minterms(self) -> int:
        return 2**self.max_operands if self.max_channels else 0

    @property
    def log10_functions(self) -> float:
        """log10 of the 2^(2^N) realizable functions."""
        return self.minterms * math.log10(2)

    @property
    def delta_f_reported(self) -> float:
        """delta_f truncated to 0.1 GHz."""
        return math.floor(self.delta_f * 10.0) / 10.0

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["minterms"] = self.minterms
        data["log10_functions"] = self.log10_functions
        return data


def band_ghz(lambda1_nm: float, lambda2_nm: float) -> float:
    """Optical bandwidth between two wavelengths: c/lambda1 - c/lambda2."""
    return SPEED_OF_LIGHT_NM_GHZ / lambda1_nm - SPEED_OF_LIGHT_NM_GHZ / lambda2_nm


def estimate_capacity(
    lambda1_nm: float,
    lambda2_nm: float,
    channel_bandwidth_ghz: float,
) -> CapacityEstimate:
    """Estimate channel and operand counts for a wavelength band.

    Args:
        lambda1_nm: Short edge of the band.
        lambda2_nm: Long edge of the band.
        channel_bandwidth_ghz: Bandwidth each channel needs (about the bit rate).

    Returns:
        CapacityEstimate with W = floor(delta_f / bw) and N = floor(log2 W).

    Raises:
        ValueError: If the wavelengths are not 0 < lambda1 < lambda2 or the
            bandwidth is not positive.
    """
    if not 0 < lambda1_nm < lambda2_nm:
        raise ValueError(f"Need 0 < lambda1 < lambda2, got {lambda1_nm}, {lambda2_nm}")
    if channel_bandwidth_ghz <= 0:
        raise ValueError(f"channel_bandwidth must be positive, got {channel_bandwidth_ghz}")

    delta_f = band_ghz(lambda1_nm, lambda2_nm)
    max_channels = math.floor(delta_f / channel_bandwidth_ghz)
    # floor: 2^N channels must fit in W
    max_operands = max_channels.bit_length() - 1 if max_channels > 0 else 0

    return CapacityEstimate(
        lambda1_nm=lambda1_nm,
        lambda2_nm=lambda2_nm,
        channel_bandwidth_ghz=channel_bandwidth_ghz,
        delta_f=delta_f,
        max_channels=max_channels,
        max_operands=max_operands,
        modulators_proposed=max_operands,
        modulators_eo=max_operands**2,
    )


def channel_bandwidth_for_spacing(lambda_nm: float, spacing_nm: float) -> float:
    """Optical bandwidth (GHz) of one channel of ``spacing_nm`` at ``lambda_nm``."""
    if lambda_nm <= 0 or spacing_nm <= 0:
        raise ValueError("Wavelength and spacing must be positive")
    return band_ghz(lambda_nm, lambda_nm + spacing_nm)


def modulator_comparison(n: int) -> dict[str, int]:
    """Modulators needed for ``n`` operands: this array vs multi-level EO arrays."""
    if n < 0:
        raise ValueError(f"Operand count must be non-negative, got {n}")
    return {"proposed": n, "eo": n**2}
