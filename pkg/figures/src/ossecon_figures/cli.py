"""Command line: `figures <kind> --in <path...> --out <path>`."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .render import (
    render_counterfactual_ratios,
    render_s_curve,
    render_sustainability_region,
    render_tail_fit,
)
from .schemas import SchemaError, read_equilibrium, read_sweep, read_tailfit

__all__ = ["main", "KINDS"]

KINDS = ("s_curve", "counterfactual_ratios", "sustainability_region", "tail_fit")

EXIT_OK = 0
EXIT_INPUT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render a figure from ossecon CLI output files.",
    )
    parser.add_argument("--version", action="version", version=f"figures {__version__}")
    parser.add_argument("kind", choices=KINDS, help="figure to render")
    parser.add_argument(
        "--in",
        dest="inputs",
        nargs="+",
        required=True,
        metavar="PATH",
        help="input file(s) produced by the ossecon CLI",
    )
    parser.add_argument("--out", required=True, help="output image path (.svg or .png)")
    return parser


def _render(kind: str, inputs: list[str], out: Path) -> Path:
    if kind == "counterfactual_ratios":
        return render_counterfactual_ratios([read_equilibrium(p) for p in inputs], out)
    if len(inputs) != 1:
        raise SchemaError(f"{kind} takes exactly one input file, got {len(inputs)}")
    if kind == "s_curve":
        return render_s_curve(read_sweep(inputs[0]), out)
    if kind == "sustainability_region":
        return render_sustainability_region(read_sweep(inputs[0]), out)
    return render_tail_fit(read_tailfit(inputs[0]), out)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _render(args.kind, args.inputs, Path(args.out))
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
