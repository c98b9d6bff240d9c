"""Configuration loading and management."""

import json
import os
import re
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from wavepla.channels import MAX_OPERANDS, ChannelMask, WavelengthGrid, is_power_of_two

CONFIG_ENV_VAR = "PLA_CONFIG"

# Built-in layout used when no config file is given; mirrors configs/default.yaml.
DEFAULT_LAYOUT: dict[str, Any] = {
    "operand_count": 8,
    "grid": {"channel_count": 256, "start_nm": 1530.0, "spacing_nm": 0.15},
    "params": {"ideal_mode": "${PLA_IDEAL_MODE:-false}"},
    "outputs": [],
}


class GridConfig(BaseModel):
    """Wavelength grid of the source."""

    model_config = ConfigDict(extra="forbid")

    channel_count: int = 256
    start_nm: float = 1530.0
    spacing_nm: float = 0.15

    @model_validator(mode="after")
    def _check_grid(self) -> "GridConfig":
        if not is_power_of_two(self.channel_count):
            raise ValueError(f"channel_count must be a power of two, got {self.channel_count}")
        if self.channel_count > 2**MAX_OPERANDS:
            raise ValueError(f"channel_count exceeds 2^{MAX_OPERANDS}")
        if self.spacing_nm <= 0 or self.start_nm <= 0:
            raise ValueError("start_nm and spacing_nm must be positive")
        return self

    def to_grid(self) -> WavelengthGrid:
        return WavelengthGrid(self.channel_count, self.start_nm, self.spacing_nm)


class DeviceParams(BaseModel):
    """Physical parameters of the optical chain (dB/dBm at the interface)."""

    model_config = ConfigDict(extra="forbid")

    source_power: float = 0.0
    sm_insertion_loss: float = 4.0
    stage_extinction: float = 25.0
    edfa_gain: float = 16.0
    edfa_position: int = 4
    ase_floor_long: float = -45.0
    ase_floor_short: float = -35.0
    ws_insertion_loss: float = 5.0
    ideal_mode: bool = False

    @model_validator(mode="after")
    def _check_params(self) -> "DeviceParams":
        if self.stage_extinction <= 0:
            raise ValueError(f"stage_extinction must be positive, got {self.stage_extinction}")
        if self.ase_floor_short < self.ase_floor_long:
            raise ValueError("ase_floor_short must be >= ase_floor_long (dBm)")
        if self.edfa_position < 0:
            raise ValueError(f"edfa_position must be >= 0, got {self.edfa_position}")
        return self

    @classmethod
    def ideal(cls) -> "DeviceParams":
        return cls(ideal_mode=True)


class OutputSpec(BaseModel):
    """One named output: a single mask, or one mask per spatial port."""

    model_config = ConfigDict(extra="forbid")

    name: str
    mask_hex: str | None = None
    port_masks: list[str] | None = None

    @model_validator(mode="after")
    def _check_exclusive(self) -> "OutputSpec":
        if (self.mask_hex is None) == (self.port_masks is None):
            raise ValueError(f"Output {self.name!r} needs exactly one of mask_hex / port_masks")
        return self

    def hex_masks(self) -> list[str]:
        return [self.mask_hex] if self.mask_hex is not None else list(self.port_masks or [])


class PlaConfig(BaseModel):
    """Full device graph of a programmable logic array."""

    model_config = ConfigDict(extra="forbid")

    operand_count: int = 8
    grid: GridConfig = Field(default_factory=GridConfig)
    params: DeviceParams = Field(default_factory=DeviceParams)
    outputs: list[OutputSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_layout(self) -> "PlaConfig":
        n_w = self.wavelength_operands
        if not n_w <= self.operand_count <= MAX_OPERANDS:
            raise ValueError(
                f"operand_count {self.operand_count} must be in [{n_w}, {MAX_OPERANDS}] "
                f"for a {self.grid.channel_count}-channel grid"
            )
        if n_w < 1:
            raise ValueError("grid needs at least 2 channels")
        names = [o.name for o in self.outputs]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate output names in {names}")
        for output in self.outputs:
            masks = output.hex_masks()
            if len(masks) != self.port_count:
                raise ValueError(
                    f"Output {output.name!r} has {len(masks)} mask(s), "
                    f"expected {self.port_count}"
                )
            for text in masks:
                ChannelMask.from_hex(text, self.grid.channel_count)
        return self

    @property
    def wavelength_operands(self) -> int:
        return self.grid.channel_count.bit_length() - 1

    @property
    def spatial_operands(self) -> int:
        return self.operand_count - self.wavelength_operands

    @property
    def port_count(self) -> int:
        return 2**self.spatial_operands

    @property
    def output_names(self) -> list[str]:
        return [o.name for o in self.outputs]

    def wavelength_grid(self) -> WavelengthGrid:
        return self.grid.to_grid()

    def output_masks(self) -> list[list[ChannelMask]]:
        """Decoded masks, indexed [output][port]."""
        return [
            [ChannelMask.from_hex(text, self.grid.channel_count) for text in o.hex_masks()]
            for o in self.outputs
        ]


def expand_env_vars(value: Any) -> Any:
    """Recursively expand environment variables in config values.

    Supports ${VAR} and ${VAR:-default} syntax.
    """
    if isinstance(value, str):
        # Pattern matches ${VAR} or ${VAR:-default}
        pattern = r"\$\{([^}:]+)(?::-([^}]*))?\}"

        def replace(match: re.Match) -> str:
            var_name = match.group(1)
            default = match.group(2)
            return os.environ.get(var_name, default if default is not None else "")

        return re.sub(pattern, replace, value)
    elif isinstance(value, dict):
        return {k: expand_env_vars(v) for k, v in value.items()}
    elif isinstance(value, list):
        return [expand_env_vars(item) for item in value]
    return value


def load_config(config_path: str | Path) -> PlaConfig:
    """Load a PLA configuration from a YAML or JSON file.

    Args:
        config_path: Path to the configuration file.

    Returns:
        Parsed PlaConfig object.

    Raises:
        FileNotFoundError: If the config file doesn't exist.
        pydantic.ValidationError: If the config violates a layout invariant.
    """
    config_path = Path(config_path)

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, encoding="utf-8") as f:
        raw_config = yaml.safe_load(f)

    if raw_config is None:
        raw_config = {}

    # Expand environment variables
    expanded_config = expand_env_vars(raw_config)

    return PlaConfig.model_validate(expanded_config)


def save_config(config: PlaConfig, path: str | Path) -> None:
    """Write ``config`` as the JSON document format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = config.model_dump(exclude_none=True)
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_params(path: str | Path) -> DeviceParams:
    """Load a flat DeviceParams JSON object; unknown fields are rejected."""
    with open(path, encoding="utf-8") as f:
        return DeviceParams.model_validate(json.load(f))


def default_config() -> PlaConfig:
    """Built-in experimental layout with environment variables expanded."""
    return PlaConfig.model_validate(expand_env_vars(DEFAULT_LAYOUT))


def resolve_config(config_path: str | Path | None = None) -> tuple[PlaConfig, bool]:
    """Find the active configuration.

    Order: explicit path, then the PLA_CONFIG environment variable, then the
    built-in experimental layout (8 operands, 256 channels at 0.15 nm, ideal
    mode taken from PLA_IDEAL_MODE).

    Returns:
        Tuple of (config, explicit) where explicit is False for the built-in
        layout, which callers may resize to fit a function.
    """
    if config_path is None:
        config_path = os.environ.get(CONFIG_ENV_VAR) or None
    if config_path is None:
        return default_config(), False
    return load_config(config_path), True


def resize_config(config: PlaConfig, operand_count: int, wavelength_operands: int | None = None) -> PlaConfig:
    """Copy of ``config`` re-gridded for ``operand_count`` operands, outputs dropped.

    The start wavelength, spacing and device parameters are kept; the EDFA
    position is clamped to the new stage count.
    """
    n_w = operand_count if wavelength_operands is None else wavelength_operands
    if not 1 <= n_w <= operand_count:
        raise ValueError(f"wavelength operands {n_w} must be in [1, {operand_count}]")
    grid = config.grid.model_copy(update={"channel_count": 2**n_w})
    params = config.params.model_copy(
        update={"edfa_position": min(config.params.edfa_position, n_w)}
    )
    return PlaConfig(operand_count=operand_count, grid=grid, params=params, outputs=[])
