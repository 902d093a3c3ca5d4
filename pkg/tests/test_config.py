"""
Tests for config files, defaults and CLI-side resolution.
"""

from __future__ import annotations

import json
from pathlib import Path
from unittest.mock import patch

import pytest

from progrand import config as config_module
from progrand.commands.common import int_list, resolve_config, resolve_out_dir
from progrand.config import config_from_dict, config_to_dict, default_config, load_config, parse_seed
from progrand.errors import ConfigError, ShiftEquivalentTaps, UsageError
from progrand.lfsr import DEFAULT_POLYNOMIAL_32, KNOWN_PRIMITIVE
from progrand.taps import TapSet
from progrand.threshold import CounterRamp, Custom, Fixed

SMALL = KNOWN_PRIMITIVE[8].to_caret()


class TestDefaults:
    """The built-in generator."""

    def test_default_config(self) -> None:
        """32-bit register, m = 8, four k = 3 streams, seed 1, threshold 127."""
        config = default_config()
        assert config.polynomial == DEFAULT_POLYNOMIAL_32
        assert config.seed == 1
        assert config.m == 8
        assert config.schedule == Fixed(127)
        assert config.stream_ids == ("s0", "s1", "s2", "s3")
        assert all(t.k == 3 for s in config.streams for t in s.tap_sets)

    def test_default_out_dir(self, tmp_path: Path) -> None:
        """resolve_out_dir falls back to DEFAULT_OUT_DIR and creates it."""
        target = tmp_path / "out"
        with patch.object(config_module, "DEFAULT_OUT_DIR", target):
            assert resolve_out_dir(None) == target
        assert target.is_dir()


class TestConfigFile:
    """pydantic-validated JSON configs."""

    def test_explicit_streams(self) -> None:
        """Bare tap lists get positional ids."""
        config = config_from_dict(
            {
                "polynomial": SMALL,
                "m": 2,
                "streams": [[[1, 2], [1, 3]], [[1, 4], [1, 5]]],
                "schedule": {"kind": "fixed", "value": 1},
            }
        )
        assert config.stream_ids == ("s0", "s1")
        assert config.streams[1].tap_sets == (TapSet((1, 4)), TapSet((1, 5)))

    def test_named_streams(self) -> None:
        """Stream objects keep their ids."""
        config = config_from_dict(
            {
                "polynomial": SMALL,
                "m": 1,
                "streams": [{"id": "left", "taps": [[1, 2]]}, {"taps": [[1, 3]]}],
                "schedule": {"kind": "fixed", "value": 0},
            }
        )
        assert config.stream_ids == ("left", "s1")

    def test_counter_ramp(self) -> None:
        """Ramp schedules default to an initial value of 0."""
        config = config_from_dict({"schedule": {"kind": "counter_ramp"}})
        assert config.schedule == CounterRamp(0)

    @pytest.mark.parametrize(
        "data",
        [
            {"m": 0},
            {"unknown": 1},
            {"schedule": {"kind": "linear"}},
            {"schedule": {"kind": "custom"}},
            {"schedule": {"kind": "custom", "table": [[0, 1]], "csv": "x.csv"}},
        ],
    )
    def test_invalid(self, data: dict[str, object]) -> None:
        """Schema violations surface as ConfigError."""
        with pytest.raises(ConfigError):
            config_from_dict(data)

    def test_shift_equivalent_named(self) -> None:
        """The offending pair appears in the message."""
        data = {"polynomial": SMALL, "m": 1, "streams": [[[1, 4]], [[5, 8]]]}
        with pytest.raises(ShiftEquivalentTaps, match=r"\{1,4\}.*\{5,8\}"):
            config_from_dict(data)

    def test_csv_schedule_relative(self, tmp_path: Path) -> None:
        """A custom schedule CSV is resolved next to the config file."""
        (tmp_path / "schedule.csv").write_text("step,threshold\n0,10\n5,200\n")
        path = tmp_path / "gen.json"
        path.write_text(json.dumps({"schedule": {"kind": "custom", "csv": "schedule.csv"}}))
        config = load_config(path)
        assert config.schedule == Custom(((0, 10), (5, 200)))

    def test_unreadable(self, tmp_path: Path) -> None:
        """Missing or malformed files are ConfigErrors naming the path."""
        with pytest.raises(ConfigError, match="missing.json"):
            load_config(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ConfigError, match="bad.json"):
            load_config(bad)

    def test_errors_name_file(self, tmp_path: Path) -> None:
        """Domain errors from a file keep their type and gain the path."""
        path = tmp_path / "gen.json"
        path.write_text(json.dumps({"polynomial": SMALL, "m": 1, "streams": [[[1, 4]], [[5, 8]]]}))
        with pytest.raises(ShiftEquivalentTaps, match="gen.json"):
            load_config(path)

    @pytest.mark.parametrize(
        "schedule",
        [Fixed(3), CounterRamp(17), Custom(((0, 1), (4, 9)))],
    )
    def test_round_trip(self, schedule: Fixed | CounterRamp | Custom) -> None:
        """config_to_dict output rebuilds the same config."""
        base = default_config()
        assert config_from_dict(config_to_dict(base)) == base
        data = config_to_dict(base)
        data["schedule"] = config_module.schedule_to_dict(schedule)
        assert config_from_dict(data).schedule == schedule


class TestOverrides:
    """CLI-level seed and threshold overrides."""

    @pytest.mark.parametrize("text,expected", [("5", 5), ("0x10", 16), ("0b101", 5)])
    def test_parse_seed(self, text: str, expected: int) -> None:
        """Integer literals in any base."""
        assert parse_seed(text) == expected

    def test_parse_seed_invalid(self) -> None:
        """Non-numeric seeds are rejected."""
        with pytest.raises(ConfigError):
            parse_seed("seven")

    def test_resolve_overrides(self) -> None:
        """--seed and --threshold replace the config values."""
        config = resolve_config(None, None, "0x2", 27)
        assert config.seed == 2
        assert config.schedule == Fixed(27)

    def test_resolve_both_sources(self, tmp_path: Path) -> None:
        """A file and inline data together are a usage error."""
        with pytest.raises(UsageError):
            resolve_config(str(tmp_path / "x.json"), {}, None, None)

    def test_int_list(self) -> None:
        """Comma lists with blanks and hex."""
        assert int_list("27, 127,0xe3") == [27, 127, 227]
        assert int_list("") == []
        with pytest.raises(UsageError):
            int_list("1,a")
