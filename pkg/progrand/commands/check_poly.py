"""
check-poly: degree, irreducibility, primitivity and (degree <= 24) period.
"""

from __future__ import annotations

from typing import Any

from ..artifacts import write_json, write_manifest
from ..lfsr import is_irreducible, is_primitive, parse_polynomial, period
from ..lfsr.register import MAX_PERIOD_DEGREE
from .base import CommandResult, arg, command
from .common import OUT_DIR_ARGUMENT, resolve_out_dir


@command(
    name="check-poly",
    description="Check a characteristic polynomial: irreducibility, primitivity, brute-force period.",
    arguments=(
        arg("polynomial", help="Caret form 'x^3+x^2+1' or hex mask '0xd'"),
        OUT_DIR_ARGUMENT,
    ),
)
def check_poly(polynomial: str, out_dir: str | None = None) -> CommandResult:
    poly = parse_polynomial(polynomial)
    irreducible = is_irreducible(poly)
    primitive = irreducible and is_primitive(poly)
    brute_period = period(poly) if poly.degree <= MAX_PERIOD_DEGREE else None

    report: dict[str, Any] = {
        "polynomial": poly.to_caret(),
        "hex": poly.to_hex(),
        "degree": poly.degree,
        "irreducible": irreducible,
        "primitive": primitive,
        "maximal_period": (1 << poly.degree) - 1,
        "period": brute_period,
    }

    lines = [
        f"polynomial:  {poly.to_caret()} ({poly.to_hex()})",
        f"degree:      {poly.degree}",
        f"irreducible: {'yes' if irreducible else 'no'}",
        f"primitive:   {'yes' if primitive else 'no'}",
    ]
    if brute_period is None:
        lines.append(f"period:      not enumerated (degree > {MAX_PERIOD_DEGREE})")
    else:
        lines.append(f"period:      {brute_period} (maximal {(1 << poly.degree) - 1})")

    directory = resolve_out_dir(out_dir)
    outputs = [write_json(report, directory / "check_poly.json")]
    manifest = write_manifest(directory, "check-poly", {"polynomial": polynomial}, outputs)
    return CommandResult(text="\n".join(lines), data=report, outputs=tuple(outputs), manifest=manifest)


COMMAND = check_poly
