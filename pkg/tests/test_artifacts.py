"""
Tests for bit files, tables and run manifests.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from progrand.artifacts import (
    ASCII_LINE_WIDTH,
    BitFormat,
    bit_file_name,
    load_manifest,
    packed_info_path,
    read_bits,
    sha256_file,
    write_bits,
    write_csv,
    write_json,
    write_manifest,
)
from progrand.errors import UsageError


class TestBitFiles:
    """Packed and ASCII encodings."""

    def test_packed_size(self, tmp_path: Path) -> None:
        """8 bits per byte, padded up."""
        bits = np.ones(8000, dtype=np.uint8)
        assert write_bits(bits, tmp_path / "a.bin", "packed").stat().st_size == 1000
        assert write_bits(bits[:7999], tmp_path / "b.bin", "packed").stat().st_size == 1000
        assert write_bits(np.ones(8001, dtype=np.uint8), tmp_path / "c.bin", "packed").stat().st_size == 1001

    def test_packed_msb_first(self, tmp_path: Path) -> None:
        """The first bit lands in the most significant position."""
        path = write_bits(np.array([1, 0, 0, 0, 0, 0, 0, 1, 1], dtype=np.uint8), tmp_path / "s.bin", "packed")
        assert path.read_bytes() == bytes([0x81, 0x80])

    def test_ascii_wrap(self, tmp_path: Path) -> None:
        """ASCII files wrap at a fixed width and end with a newline."""
        bits = np.tile(np.array([1, 0], dtype=np.uint8), 65)
        text = write_bits(bits, tmp_path / "s.txt", "ascii").read_text()
        lines = text.splitlines()
        assert [len(line) for line in lines] == [ASCII_LINE_WIDTH, ASCII_LINE_WIDTH, 2]
        assert text.endswith("\n")
        assert lines[0].startswith("1010")

    @pytest.mark.parametrize("fmt", ["packed", "ascii"])
    def test_read_back(self, tmp_path: Path, fmt: BitFormat) -> None:
        """read_bits recovers what write_bits stored (padding trimmed by samples)."""
        rng = np.random.default_rng(1)
        bits = rng.integers(0, 2, 1003).astype(np.uint8)
        path = write_bits(bits, tmp_path / bit_file_name("s0", fmt), fmt)
        np.testing.assert_array_equal(read_bits(path, 1003), bits)

    @pytest.mark.parametrize("n", [1, 7, 1001, 1008])
    def test_packed_count_survives_padding(self, tmp_path: Path, n: int) -> None:
        """Packed files read back exactly n bits, whatever n % 8 is."""
        rng = np.random.default_rng(n)
        bits = rng.integers(0, 2, n).astype(np.uint8)
        path = write_bits(bits, tmp_path / "s0.bin", "packed")
        assert path.stat().st_size == (n + 7) // 8
        assert json.loads(packed_info_path(path).read_text()) == {"samples": n}
        np.testing.assert_array_equal(read_bits(path), bits)

    def test_packed_without_count(self, tmp_path: Path) -> None:
        """A packed file missing its sidecar is read only with an explicit count."""
        bits = np.ones(1001, dtype=np.uint8)
        path = write_bits(bits, tmp_path / "s0.bin", "packed")
        packed_info_path(path).unlink()
        with pytest.raises(UsageError, match="sample count unknown"):
            read_bits(path)
        assert read_bits(path, 1001).size == 1001

    def test_packed_count_mismatch(self, tmp_path: Path) -> None:
        """A sidecar that does not fit the byte count is rejected."""
        path = write_bits(np.ones(16, dtype=np.uint8), tmp_path / "s0.bin", "packed")
        packed_info_path(path).write_text('{"samples": 40}')
        with pytest.raises(UsageError, match="cannot hold"):
            read_bits(path)

    def test_packed_samples_beyond_count(self, tmp_path: Path) -> None:
        """Padding bits are never handed out as samples."""
        path = write_bits(np.ones(1001, dtype=np.uint8), tmp_path / "s0.bin", "packed")
        assert read_bits(path, 1000).size == 1000
        with pytest.raises(UsageError):
            read_bits(path, 1008)

    def test_file_names(self) -> None:
        """Extension follows the format."""
        assert bit_file_name("s2", "packed") == "s2.bin"
        assert bit_file_name("s2", "ascii") == "s2.txt"

    def test_read_errors(self, tmp_path: Path) -> None:
        """Bad characters, short files and missing files."""
        bad = tmp_path / "bad.txt"
        bad.write_text("0102\n")
        with pytest.raises(UsageError):
            read_bits(bad)
        good = tmp_path / "good.txt"
        good.write_text("0101\n")
        with pytest.raises(UsageError):
            read_bits(good, 5)
        with pytest.raises(UsageError):
            read_bits(tmp_path / "missing.bin")


class TestTables:
    """CSV and JSON writers."""

    def test_csv_line_endings(self, tmp_path: Path) -> None:
        """Header row, no index column, '\\n' endings."""
        path = write_csv(pd.DataFrame({"threshold": [1, 2], "p": [0.5, 0.25]}), tmp_path / "t.csv")
        assert path.read_bytes() == b"threshold,p\n1,0.5\n2,0.25\n"

    def test_json_indent(self, tmp_path: Path) -> None:
        """Two-space indent, trailing newline."""
        path = write_json({"a": 1}, tmp_path / "sub" / "r.json")
        assert path.read_text() == '{\n  "a": 1\n}\n'


class TestManifest:
    """Run manifests."""

    def test_write_and_load(self, tmp_path: Path) -> None:
        """Outputs are recorded relative to the output directory with hashes."""
        out = write_json({"x": 1}, tmp_path / "report.json")
        source = tmp_path / "in.txt"
        source.write_text("0101\n")
        path = write_manifest(
            tmp_path, "check-poly", {"polynomial": "x^3+x^2+1"}, [out], samples=10, inputs=[source]
        )
        assert path.name == "check_poly.manifest.json"
        manifest = load_manifest(path)
        assert manifest.command == "check-poly"
        assert manifest.samples == 10
        assert manifest.outputs[0].path == "report.json"
        assert manifest.outputs[0].sha256 == sha256_file(out)
        assert manifest.inputs[0].size == 5
        assert json.loads(path.read_text())["version"] == 1

    def test_load_invalid(self, tmp_path: Path) -> None:
        """A file that is not a manifest is a usage error."""
        path = tmp_path / "m.json"
        path.write_text('{"command": 3}')
        with pytest.raises(UsageError):
            load_manifest(path)
