#!/usr/bin/env python3
"""
Smoke test for the progrand CLI.

Steps:
1. check-poly on the default 32-bit polynomial
2. capacity for the default tap layout
3. generate (packed + ASCII)
4. sweep at the three reference thresholds
5. dynamic counter-ramp fit
6. correlate the generated streams
7. quality scan
8. replay the generate manifest

Usage:
    python scripts/smoke_cli.py [samples]

Default: 20000 samples per stream. Runs in a temporary directory.
"""

from __future__ import annotations

import json
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, Callable

from progrand.cli import main as cli_main

# Type alias for smoke steps: (work directory, samples) -> ok
StepFunction = Callable[[Path, int], bool]


def run(args: list[str]) -> int:
    print(f"   $ progrand {' '.join(args)}")
    return cli_main(args)


def read_json(path: Path) -> dict[str, Any]:
    data: dict[str, Any] = json.loads(path.read_text())
    return data


def check_poly(work: Path, samples: int) -> bool:
    print("\n1. check-poly x^32+x^22+x^2+x+1...")
    if run(["check-poly", "x^32+x^22+x^2+x+1", "--out-dir", str(work / "poly")]) != 0:
        return False
    report = read_json(work / "poly" / "check_poly.json")
    print(f"   ✅ primitive: {report['primitive']}")
    return bool(report["primitive"])


def check_capacity(work: Path, samples: int) -> bool:
    print("\n2. capacity 32 3 8...")
    if run(["capacity", "32", "3", "8", "--out-dir", str(work / "capacity")]) != 0:
        return False
    value = read_json(work / "capacity" / "capacity.json")["capacity"]
    print(f"   ✅ capacity: {value}")
    return value == 58


def check_generate(work: Path, samples: int) -> bool:
    print("\n3. generate...")
    out = work / "generate"
    if run(["generate", "-N", str(samples), "--format", "both", "--out-dir", str(out)]) != 0:
        return False
    files = sorted(p.name for p in out.glob("s*.bin"))
    print(f"   ✅ streams: {files}")
    return len(files) == 4


def check_sweep(work: Path, samples: int) -> bool:
    print("\n4. sweep 27,127,227...")
    out = work / "sweep"
    if run(["sweep", "-t", "27,127,227", "-N", str(samples), "--out-dir", str(out)]) != 0:
        return False
    lines = (out / "sweep.csv").read_text().splitlines()
    for line in lines[1:]:
        print(f"   ✅ {line}")
    return len(lines) == 4


def check_dynamic(work: Path, samples: int) -> bool:
    print("\n5. dynamic --ramp-from 0...")
    out = work / "dynamic"
    if run(["dynamic", "--ramp-from", "0", "-N", "2048", "--out-dir", str(out)]) != 0:
        return False
    fit = read_json(out / "dynamic_fit.json")["fit"]
    print(f"   ✅ c2={fit['c2']:.4f} c1={fit['c1']:.4f} r2={fit['r_squared']:.5f}")
    return fit["c2"] < 0 < fit["c1"]


def check_correlate(work: Path, samples: int) -> bool:
    print("\n6. correlate generated streams...")
    files = [str(work / "generate" / f"s{i}.bin") for i in range(4)]
    out = work / "correlate"
    if run(["correlate", *files, "-N", str(samples), "--method", "fft", "--out-dir", str(out)]) != 0:
        return False
    report = read_json(out / "correlate.json")
    worst = max(abs(r["max_abs_value"]) for r in report["cross"] + report["auto"])
    print(f"   ✅ worst max |R|: {worst:.5f}")
    return True


def check_quality(work: Path, samples: int) -> bool:
    print("\n7. quality 27,127,227...")
    out = work / "quality"
    args = ["quality", "-t", "27,127,227", "-N", str(samples), "--method", "fft", "--out-dir", str(out)]
    return run(args) == 0


def check_replay(work: Path, samples: int) -> bool:
    print("\n8. replay generate manifest...")
    manifest = work / "generate" / "generate.manifest.json"
    return run(["replay", str(manifest), "--out-dir", str(work / "replay")]) == 0


def main() -> int:
    samples = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000

    print("=" * 60)
    print("progrand CLI smoke test")
    print("=" * 60)
    print(f"Samples per stream: {samples}")

    steps: list[tuple[str, StepFunction]] = [
        ("check-poly", check_poly),
        ("capacity", check_capacity),
        ("generate", check_generate),
        ("sweep", check_sweep),
        ("dynamic", check_dynamic),
        ("correlate", check_correlate),
        ("quality", check_quality),
        ("replay", check_replay),
    ]

    passed = 0
    failed = 0
    start = time.time()

    with tempfile.TemporaryDirectory(prefix="progrand-smoke-") as tmp:
        work = Path(tmp)
        for name, step_fn in steps:
            try:
                if step_fn(work, samples):
                    passed += 1
                else:
                    print(f"   ❌ {name} failed")
                    failed += 1
            except Exception as e:
                print(f"   ❌ Exception in {name}: {e}")
                failed += 1

    print("\n" + "=" * 60)
    print(f"Results: {passed} passed, {failed} failed ({time.time() - start:.1f}s)")
    print("=" * 60)

    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
