"""Tests for configuration loading."""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from wavepla.config import (
    CONFIG_ENV_VAR,
    DeviceParams,
    OutputSpec,
    PlaConfig,
    default_config,
    expand_env_vars,
    load_config,
    load_params,
    resize_config,
    resolve_config,
    save_config,
)

CONFIGS = Path(__file__).parent.parent / "configs"


class TestExpandEnvVars:
    """Tests for environment variable expansion."""

    def test_simple_var(self, monkeypatch):
        """Expand ${VAR}."""
        monkeypatch.setenv("PLA_TEST_VAR", "1540.0")
        assert expand_env_vars("${PLA_TEST_VAR}") == "1540.0"

    def test_default(self, monkeypatch):
        """Fall back to ${VAR:-default}."""
        monkeypatch.delenv("PLA_MISSING", raising=False)
        assert expand_env_vars("${PLA_MISSING:-false}") == "false"

    def test_nested(self, monkeypatch):
        """Expand inside dicts and lists."""
        monkeypatch.setenv("PLA_TEST_VAR", "x")
        assert expand_env_vars({"a": ["${PLA_TEST_VAR}"]}) == {"a": ["x"]}


class TestDeviceParams:
    """Tests for parameter validation."""

    def test_defaults(self):
        """Defaults match the experimental setup."""
        params = DeviceParams()
        assert params.sm_insertion_loss == 4.0
        assert params.stage_extinction == 25.0
        assert params.edfa_gain == 16.0
        assert params.edfa_position == 4
        assert params.ws_insertion_loss == 5.0
        assert not params.ideal_mode

    def test_unknown_field(self, tmp_path):
        """Unknown parameter names are rejected."""
        path = tmp_path / "params.json"
        path.write_text(json.dumps({"stage_extinction": 30.0, "crosstalk": -40.0}))
        with pytest.raises(ValidationError):
            load_params(path)

    def test_load_params(self, tmp_path):
        """A partial parameter file overrides only its fields."""
        path = tmp_path / "params.json"
        path.write_text(json.dumps({"stage_extinction": 30.0}))
        assert load_params(path).stage_extinction == 30.0

    def test_non_positive_extinction(self):
        """Stage extinction must be positive."""
        with pytest.raises(ValidationError):
            DeviceParams(stage_extinction=0.0)

    def test_inverted_ase_tilt(self):
        """The short-wavelength ASE floor may not sit below the long one."""
        with pytest.raises(ValidationError):
            DeviceParams(ase_floor_short=-50.0, ase_floor_long=-40.0)


class TestPlaConfig:
    """Tests for layout validation."""

    def test_default_layout(self):
        """The default layout is 8 wavelength operands and one port."""
        cfg = PlaConfig()
        assert cfg.operand_count == 8
        assert cfg.wavelength_operands == 8
        assert cfg.spatial_operands == 0
        assert cfg.port_count == 1

    def test_grid_must_be_power_of_two(self):
        """Channel counts must be powers of two."""
        with pytest.raises(ValidationError):
            PlaConfig.model_validate({"grid": {"channel_count": 200}})

    def test_too_few_operands(self):
        """The grid cannot host more stages than operands."""
        with pytest.raises(ValidationError):
            PlaConfig(operand_count=7)

    def test_duplicate_outputs(self):
        """Output names must be unique."""
        out = OutputSpec(name="f", mask_hex="0" * 64)
        with pytest.raises(ValidationError):
            PlaConfig(outputs=[out, out])

    def test_port_mask_count(self):
        """Spatial layouts need one mask per port."""
        cfg = resize_config(PlaConfig(), 4, 3)
        with pytest.raises(ValidationError):
            cfg.model_validate({**cfg.model_dump(), "outputs": [{"name": "f", "mask_hex": "00"}]})

    def test_mask_exclusive(self):
        """An output has either mask_hex or port_masks."""
        with pytest.raises(ValidationError):
            OutputSpec(name="f")
        with pytest.raises(ValidationError):
            OutputSpec(name="f", mask_hex="0", port_masks=["0"])


class TestLoadConfig:
    """Tests for file loading."""

    def test_shipped_default(self, monkeypatch):
        """configs/default.yaml holds the experimental layout."""
        monkeypatch.delenv("PLA_IDEAL_MODE", raising=False)
        cfg = load_config(CONFIGS / "default.yaml")
        assert cfg.grid.channel_count == 256
        assert cfg.grid.spacing_nm == 0.15
        assert not cfg.params.ideal_mode
        assert cfg.outputs == []

    def test_env_switches_ideal_mode(self, monkeypatch):
        """PLA_IDEAL_MODE switches the shipped default to ideal mode."""
        monkeypatch.setenv("PLA_IDEAL_MODE", "true")
        assert load_config(CONFIGS / "default.yaml").params.ideal_mode

    def test_life_layout(self):
        """configs/life9.yaml has one spatial operand."""
        cfg = load_config(CONFIGS / "life9.yaml")
        assert cfg.operand_count == 9
        assert cfg.spatial_operands == 1

    def test_missing(self, tmp_path):
        """A missing config file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "nope.yaml")

    def test_json_round_trip(self, tmp_path):
        """A saved JSON config loads back unchanged."""
        cfg = resize_config(PlaConfig(), 3).model_copy(
            update={"outputs": [OutputSpec(name="m5", mask_hex="20")]}
        )
        path = tmp_path / "cfg.json"
        save_config(cfg, path)
        assert load_config(path) == cfg

    def test_empty_file(self, tmp_path):
        """An empty file gives the default config."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config(path) == PlaConfig()


class TestResolveConfig:
    """Tests for the config search order."""

    def test_builtin(self, monkeypatch):
        """Without a path or PLA_CONFIG the built-in layout is used."""
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        monkeypatch.delenv("PLA_IDEAL_MODE", raising=False)
        cfg, explicit = resolve_config()
        assert cfg == PlaConfig()
        assert not explicit

    def test_builtin_follows_ideal_mode_env(self, monkeypatch):
        """PLA_IDEAL_MODE switches the built-in layout to ideal mode."""
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        monkeypatch.setenv("PLA_IDEAL_MODE", "true")
        cfg, explicit = resolve_config()
        assert cfg.params.ideal_mode
        assert cfg.grid.channel_count == 256
        assert not explicit

    def test_builtin_matches_shipped_default(self, monkeypatch):
        """The built-in layout equals configs/default.yaml."""
        monkeypatch.delenv("PLA_IDEAL_MODE", raising=False)
        assert default_config() == load_config(CONFIGS / "default.yaml")

    def test_env_var(self, monkeypatch):
        """PLA_CONFIG names the config file."""
        monkeypatch.setenv(CONFIG_ENV_VAR, str(CONFIGS / "ideal.yaml"))
        cfg, explicit = resolve_config()
        assert cfg.params.ideal_mode
        assert explicit

    def test_explicit_path_wins(self, monkeypatch):
        """An explicit path beats PLA_CONFIG."""
        monkeypatch.setenv(CONFIG_ENV_VAR, str(CONFIGS / "ideal.yaml"))
        cfg, _ = resolve_config(CONFIGS / "life9.yaml")
        assert cfg.operand_count == 9


class TestResizeConfig:
    def test_clamps_edfa(self):
        """The EDFA position is clamped to the new stage count."""
        cfg = resize_config(PlaConfig(), 3)
        assert cfg.grid.channel_count == 8
        assert cfg.params.edfa_position == 3

    def test_keeps_grid_geometry(self):
        """Resizing keeps the start wavelength and spacing."""
        cfg = resize_config(PlaConfig(), 10, 8)
        assert cfg.grid.start_nm == 1530.0
        assert cfg.port_count == 4

    def test_invalid_split(self):
        """More wavelength operands than operands is rejected."""
        with pytest.raises(ValueError):
            resize_config(PlaConfig(), 4, 5)
