"""Shared fixtures: real input files produced by the ossecon CLI."""

from __future__ import annotations

import json

import numpy as np
import pytest

from ossecon import cli as ossecon_cli


def _run(args: list[str]) -> None:
    code = ossecon_cli.main(args)
    assert code == 0, f"ossecon {' '.join(args)} exited {code}"


@pytest.fixture(scope="session")
def cli_outputs(tmp_path_factory):
    """One directory of every input file the figure kinds consume."""
    root = tmp_path_factory.mktemp("inputs")

    zeta_cfg = root / "zeta_sweep.json"
    zeta_cfg.write_text(
        json.dumps(
            {
                "params": {"theta": 3.5},
                "sweep_axis": {
                    "name": "zeta",
                    "grid": [round(0.2 * k, 1) for k in range(22)],
                },
            }
        )
    )
    zeta_dir = root / "zeta"
    _run(["sweep", "--config", str(zeta_cfg), "--out", str(zeta_dir)])

    v_cfg = root / "v_sweep.json"
    v_cfg.write_text(
        json.dumps(
            {
                "scenario": "long_run",
                "sweep_axis": {"name": "v", "grid": [0.0, 0.35, 0.7]},
            }
        )
    )
    v_dir = root / "vsweep"
    _run(["sweep", "--config", str(v_cfg), "--out", str(v_dir)])

    grid = [round(0.05 * k, 2) for k in range(19)]
    for scenario in ("short_run", "long_run"):
        cfg = root / f"{scenario}.json"
        cfg.write_text(json.dumps({"scenario": scenario, "v_grid": grid}))
        _run(["solve", "--config", str(cfg), "--out", str(root / scenario)])

    stars = root / "stars.csv"
    counts = np.arange(1, 20_001, dtype=float) ** -0.5 * 1e4
    with open(stars, "w", encoding="utf-8") as fh:
        fh.write("repo,stars\n")
        fh.writelines(f"r{i},{c:.10g}\n" for i, c in enumerate(counts))
    tail_dir = root / "tail"
    _run(["calibrate", "--input", str(stars), "--column", "stars", "--out", str(tail_dir)])

    return {
        "zeta_sweep": zeta_dir / "sweep.csv",
        "v_sweep": v_dir / "sweep.csv",
        "short_run_csv": root / "short_run" / "equilibrium.csv",
        "short_run_json": root / "short_run" / "equilibrium.json",
        "long_run_csv": root / "long_run" / "equilibrium.csv",
        "long_run_json": root / "long_run" / "equilibrium.json",
        "tailfit": tail_dir / "tailfit.json",
    }
