"""Batch command line for solves, sweeps, simulations, and calibration.

Four subcommands driven by a JSON config (``solve``, ``sweep``,
``simulate``) or flags (``calibrate``), writing CSV tables plus JSON
metadata that embeds the fully resolved configuration and tool version.
Outputs are byte-identical across reruns of the same config and seed.

Exit codes: 0 success, 2 config or input error, 3 model-domain error
(non-interior equilibrium), 4 numerical or simulation non-convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .calibration import binned_log_rank_fit, implied_gamma, ingest_values_csv
from .mc import (
    DegenerateMarketError,
    MarketConvergenceError,
    RngSpec,
    simulate_market,
    simulate_package_choice,
    simulate_usage_nest,
)
from .model import (
    BusinessModel,
    ModelParams,
    NonInteriorEquilibriumError,
    Scenario,
    business_model_pi_ratio,
    min_monetization,
    solve_scenario,
    sustainability_checks,
    utility_multiplier,
    vibe_share,
    zeta_for_share,
)
from .solvers import ConvergenceError

__all__ = ["main", "load_config", "ScenarioConfig", "McRun", "ConfigError"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_NUMERIC = 4

SWEEP_AXES = (
    "v",
    "zeta",
    "pi_bar",
    "kappa",
    "tau",
    "sigma",
    "gamma",
    "theta",
    "beta",
    "u_base",
)

_TOP_KEYS = {"params", "scenario", "business_model", "v_grid", "sweep_axis", "mc", "output_dir"}
_PARAM_KEYS = {f.name for f in dataclasses.fields(ModelParams)}
_BM_KEYS = {"alpha", "rho"}
_SWEEP_KEYS = {"name", "grid"}
_MC_KEYS = {"n_users", "n_dev_scale", "seed"}

# Default qualities for the per-row package-choice validation columns.
_CHOICE_QUALITIES = (1.0, 2.0)


class ConfigError(ValueError):
    """The config file or CLI input is malformed or inconsistent."""


@dataclass(frozen=True)
class McRun:
    """Simulation scales and seed from the ``mc`` config block.

    Attributes:
        n_users: User-side draws per row.
        n_dev_scale: Developer draws per unit of entry mass.
        seed: Base seed for all row substreams.
    """

    n_users: int
    n_dev_scale: int
    seed: int


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved run configuration.

    Attributes:
        params: Model primitives after defaults are applied.
        scenario: Usage-technology regime to solve under.
        business_model: Optional monetization coverage.
        v_grid: Sorted unique AI-usage shares to evaluate.
        sweep_axis: Optional ``(parameter name, grid)`` for sweeps.
        mc: Optional simulation block.
        output_dir: Directory output files are written into.
    """

    params: ModelParams
    scenario: Scenario
    business_model: BusinessModel | None
    v_grid: tuple[float, ...]
    sweep_axis: tuple[str, tuple[float, ...]] | None
    mc: McRun | None
    output_dir: str

    def resolved(self) -> dict:
        """The configuration as a plain dict, for embedding in outputs."""
        return {
            "params": dataclasses.asdict(self.params),
            "scenario": self.scenario.value,
            "business_model": (
                dataclasses.asdict(self.business_model) if self.business_model else None
            ),
            "v_grid": list(self.v_grid),
            "sweep_axis": (
                {"name": self.sweep_axis[0], "grid": list(self.sweep_axis[1])}
                if self.sweep_axis
                else None
            ),
            "mc": dataclasses.asdict(self.mc) if self.mc else None,
            "output_dir": self.output_dir,
        }


def _require_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(
            f"unknown {where} keys: {sorted(unknown)}; allowed: {sorted(allowed)}"
        )


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ConfigError(f"{where} must be a number, got {x!r}")
    return float(x)


def _integer(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ConfigError(f"{where} must be an integer, got {x!r}")
    return x


def load_config(path) -> ScenarioConfig:
    """Parse and validate a JSON config file; unknown keys are errors."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    _require_keys(raw, _TOP_KEYS, "config")

    param_section = raw.get("params", {})
    if not isinstance(param_section, dict):
        raise ConfigError("params must be an object")
    _require_keys(param_section, _PARAM_KEYS, "params")
    try:
        params = ModelParams(
            **{k: _number(v, f"params.{k}") for k, v in param_section.items()}
        )
    except ValueError as exc:
        raise ConfigError(f"invalid params: {exc}") from exc

    scenario_raw = raw.get("scenario", Scenario.BASELINE.value)
    try:
        scenario = Scenario(scenario_raw)
    except ValueError as exc:
        valid = ", ".join(s.value for s in Scenario)
        raise ConfigError(f"unknown scenario {scenario_raw!r}; valid: {valid}") from exc

    business_model = None
    if raw.get("business_model") is not None:
        bm_section = raw["business_model"]
        if not isinstance(bm_section, dict):
            raise ConfigError("business_model must be an object")
        _require_keys(bm_section, _BM_KEYS, "business_model")
        if _BM_KEYS - set(bm_section):
            raise ConfigError("business_model requires both alpha and rho")
        try:
            business_model = BusinessModel(
                alpha=_number(bm_section["alpha"], "business_model.alpha"),
                rho=_number(bm_section["rho"], "business_model.rho"),
            )
        except ValueError as exc:
            raise ConfigError(f"invalid business_model: {exc}") from exc
    if scenario is Scenario.CUSTOM_BUSINESS_MODEL and business_model is None:
        raise ConfigError("scenario custom_business_model requires a business_model block")

    v_grid_raw = raw.get("v_grid", [0.0])
    if not isinstance(v_grid_raw, list):
        raise ConfigError("v_grid must be a list")
    if not v_grid_raw:
        raise ConfigError("v_grid must not be empty")
    v_grid = tuple(_number(v, "v_grid entry") for v in v_grid_raw)
    for v in v_grid:
        if not 0.0 <= v < 1.0:
            raise ConfigError(f"v_grid entries must lie in [0, 1), got {v}")
    if list(v_grid) != sorted(set(v_grid)):
        raise ConfigError("v_grid must be sorted and free of duplicates")

    sweep_axis = None
    if raw.get("sweep_axis") is not None:
        sw = raw["sweep_axis"]
        if not isinstance(sw, dict):
            raise ConfigError("sweep_axis must be an object")
        _require_keys(sw, _SWEEP_KEYS, "sweep_axis")
        if _SWEEP_KEYS - set(sw):
            raise ConfigError("sweep_axis requires both name and grid")
        name = sw["name"]
        if name not in SWEEP_AXES:
            raise ConfigError(
                f"unknown sweep axis {name!r}; valid axes: {', '.join(SWEEP_AXES)}"
            )
        grid_raw = sw["grid"]
        if not isinstance(grid_raw, list) or not grid_raw:
            raise ConfigError("sweep_axis.grid must be a non-empty list")
        sweep_axis = (name, tuple(_number(g, "sweep_axis.grid entry") for g in grid_raw))

    mc = None
    if raw.get("mc") is not None:
        mc_section = raw["mc"]
        if not isinstance(mc_section, dict):
            raise ConfigError("mc must be an object")
        _require_keys(mc_section, _MC_KEYS, "mc")
        if _MC_KEYS - set(mc_section):
            raise ConfigError("mc requires n_users, n_dev_scale, and seed")
        n_users = _integer(mc_section["n_users"], "mc.n_users")
        n_dev_scale = _integer(mc_section["n_dev_scale"], "mc.n_dev_scale")
        seed = _integer(mc_section["seed"], "mc.seed")
        if n_users < 1 or n_dev_scale < 1:
            raise ConfigError("mc.n_users and mc.n_dev_scale must be at least 1")
        if seed < 0:
            raise ConfigError("mc.seed must be non-negative")
        mc = McRun(n_users=n_users, n_dev_scale=n_dev_scale, seed=seed)

    output_dir = raw.get("output_dir", ".")
    if not isinstance(output_dir, str):
        raise ConfigError("output_dir must be a string")

    return ScenarioConfig(
        params=params,
        scenario=scenario,
        business_model=business_model,
        v_grid=v_grid,
        sweep_axis=sweep_axis,
        mc=mc,
        output_dir=output_dir,
    )


def _fmt(x) -> str:
    """One CSV cell: bools as 1/0, ints and strings verbatim, reals at 12 significant digits."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, str)):
        return str(x)
    return format(float(x), ".12g")


def _write_csv(path: Path, columns: list[str], rows: list[list]) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _meta(config: ScenarioConfig, columns: list[str]) -> dict:
    return {
        "tool": "ossecon",
        "version": __version__,
        "config": config.resolved(),
        "columns": columns,
    }


def _with_zero(v_grid: tuple[float, ...]) -> tuple[float, ...]:
    # Counterfactual ratios need the v = 0 reference row.
    return v_grid if v_grid[0] == 0.0 else (0.0,) + v_grid


_SOLVE_COLUMNS = [
    "v",
    "pi",
    "u",
    "m",
    "q0",
    "q_bar",
    "m_s",
    "phi",
    "utility",
    "m_ratio",
    "ms_ratio",
    "qbar_ratio",
    "utility_ratio",
]


def cmd_solve(config: ScenarioConfig, out_dir: Path) -> int:
    """Solve the configured scenario on the v grid and write equilibrium.csv."""
    grid = _with_zero(config.v_grid)
    eqs = [
        solve_scenario(config.params, config.scenario, v, config.business_model)
        for v in grid
    ]
    base = eqs[0]
    rows = []
    for v, eq in zip(grid, eqs):
        rows.append(
            [
                v,
                eq.pi,
                eq.u,
                eq.m,
                eq.q0,
                eq.q_bar,
                eq.m_s,
                eq.phi,
                eq.utility,
                eq.m / base.m,
                eq.m_s / base.m_s,
                eq.q_bar / base.q_bar,
                eq.utility / base.utility,
            ]
        )
    _write_csv(out_dir / "equilibrium.csv", _SOLVE_COLUMNS, rows)
    payload = _meta(config, _SOLVE_COLUMNS)
    payload["rows"] = [dict(zip(_SOLVE_COLUMNS, row)) for row in rows]
    _write_json(out_dir / "equilibrium.json", payload)
    return EXIT_OK


_SWEEP_BASE_COLUMNS = [
    "axis",
    "value",
    "v",
    "pi",
    "u",
    "m",
    "q0",
    "q_bar",
    "m_s",
    "phi",
    "utility",
    "omega_bound",
    "pi_floor_ratio",
]
_SWEEP_BM_COLUMNS = [
    "bm_pi_ratio",
    "bm_constraint_lhs",
    "bm_constraint_rhs",
    "bm_sustainable",
    "bm_rho_max",
    "bm_alpha_min",
]


def cmd_sweep(config: ScenarioConfig, out_dir: Path) -> int:
    """Re-solve along one parameter axis and write sweep.csv."""
    if config.sweep_axis is None:
        raise ConfigError("sweep requires a sweep_axis block in the config")
    axis, grid = config.sweep_axis
    columns = list(_SWEEP_BASE_COLUMNS)
    if config.business_model is not None:
        columns += _SWEEP_BM_COLUMNS
    rows = []
    for value in grid:
        if axis == "v":
            params, v = config.params, value
        elif axis == "zeta":
            params = dataclasses.replace(config.params, zeta=value)
            v = vibe_share(value, params.theta)
        else:
            try:
                params = dataclasses.replace(config.params, **{axis: value})
            except ValueError as exc:
                raise ConfigError(f"sweep value {axis}={value} is invalid: {exc}") from exc
            v = config.v_grid[0]
        eq = solve_scenario(params, config.scenario, v, config.business_model)
        omega, floor = min_monetization(params, v)
        row = [
            axis,
            value,
            v,
            eq.pi,
            eq.u,
            eq.m,
            eq.q0,
            eq.q_bar,
            eq.m_s,
            eq.phi,
            eq.utility,
            omega,
            floor,
        ]
        if config.business_model is not None:
            checks = sustainability_checks(params, config.business_model, v)
            row += [
                business_model_pi_ratio(config.business_model, v),
                checks.constraint_lhs,
                checks.constraint_rhs,
                checks.sustainable,
                checks.rho_max,
                checks.alpha_min,
            ]
        rows.append(row)
    _write_csv(out_dir / "sweep.csv", columns, rows)
    _write_json(out_dir / "sweep_meta.json", _meta(config, columns))
    return EXIT_OK


_SIM_COLUMNS = [
    "v",
    "m_closed",
    "m_hat",
    "m_rel_dev",
    "q0_closed",
    "q0_hat",
    "ms_share_closed",
    "ms_share_hat",
    "ms_closed",
    "ms_hat",
    "m_hat_ratio",
    "ms_hat_ratio",
    "nest_v_hat",
    "nest_mean_closed",
    "nest_mean_hat",
    "choice_p_top_closed",
    "choice_p_top_hat",
    "residual",
    "iterations",
]


def cmd_simulate(config: ScenarioConfig, out_dir: Path) -> int:
    """Run the agent-level market beside the closed form and write simulation.csv."""
    if config.mc is None:
        raise ConfigError("simulate requires an mc block in the config")
    mc = config.mc
    grid = _with_zero(config.v_grid)
    p_top = _CHOICE_QUALITIES[1] ** config.params.sigma / sum(
        q**config.params.sigma for q in _CHOICE_QUALITIES
    )
    rows = []
    for i, v in enumerate(grid):
        params = dataclasses.replace(
            config.params, zeta=zeta_for_share(v, config.params.theta)
        )
        eq = solve_scenario(params, config.scenario, v, config.business_model)
        # Streams per row: 3i market, 3i+1 nest validation, 3i+2 choice.
        sim = simulate_market(
            params,
            config.scenario,
            n_users=mc.n_users,
            n_dev_scale=mc.n_dev_scale,
            rng=RngSpec(seed=mc.seed, stream_id=3 * i),
            business_model=config.business_model,
        )
        nest_v_hat, nest_mean_hat = simulate_usage_nest(
            params.zeta, params.theta, mc.n_users, RngSpec(seed=mc.seed, stream_id=3 * i + 1)
        )
        choice = simulate_package_choice(
            _CHOICE_QUALITIES,
            params.sigma,
            1.0,
            mc.n_users,
            RngSpec(seed=mc.seed, stream_id=3 * i + 2),
        )
        rows.append(
            [
                v,
                eq.m,
                sim.m_hat,
                sim.m_hat / eq.m - 1.0,
                eq.q0,
                sim.q0_hat,
                eq.q0**-params.gamma,
                sim.ms_share_hat,
                eq.m_s,
                sim.m_hat * sim.ms_share_hat,
                None,  # m_hat_ratio, filled once the v = 0 row exists
                None,  # ms_hat_ratio
                nest_v_hat,
                utility_multiplier(v, params.theta),
                nest_mean_hat,
                p_top,
                choice.frequencies[1],
                sim.residual,
                sim.iterations,
            ]
        )
    m_hat0 = rows[0][2]
    ms_hat0 = rows[0][9]
    for row in rows:
        row[10] = row[2] / m_hat0
        row[11] = row[9] / ms_hat0
    _write_csv(out_dir / "simulation.csv", _SIM_COLUMNS, rows)
    _write_json(out_dir / "simulation_meta.json", _meta(config, _SIM_COLUMNS))
    return EXIT_OK


def cmd_calibrate(args, out_dir: Path) -> int:
    """Fit a tail slope to a CSV column and write tailfit.json."""
    ingest = ingest_values_csv(args.input, args.column)
    fit = binned_log_rank_fit(ingest.values, n_bins=args.bins, tail_cut=args.tail_cut)
    payload = {
        "tool": "ossecon",
        "version": __version__,
        "input": {
            "path": str(args.input),
            "column": args.column,
            "bins": args.bins,
            "tail_cut": args.tail_cut,
            "sigma": args.sigma,
        },
        "n_values": int(ingest.values.size),
        "n_dropped": ingest.n_dropped,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "se_slope": fit.se_slope,
        "se_intercept": fit.se_intercept,
        "r_squared": fit.r_squared,
        "n_bins": fit.n_bins,
        "implied_gamma": (
            implied_gamma(args.sigma, fit.slope) if args.sigma is not None else None
        ),
        "bin_table": [[r, v] for r, v in fit.bin_table],
    }
    _write_json(out_dir / "tailfit.json", payload)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ossecon",
        description="Solve, sweep, simulate, and calibrate the open-source ecosystem model.",
    )
    parser.add_argument("--version", action="version", version=f"ossecon {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_config: bool = True) -> None:
        if needs_config:
            p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", default=None, help="output directory (default: config output_dir)")
        p.add_argument("--seed", type=int, default=None, help="override the mc seed")

    common(sub.add_parser("solve", help="closed-form equilibrium on the v grid"))
    common(sub.add_parser("sweep", help="re-solve along one parameter axis"))
    common(sub.add_parser("simulate", help="agent-level market beside the closed form"))

    cal = sub.add_parser("calibrate", help="tail-slope fit from a CSV column")
    cal.add_argument("--input", required=True, help="CSV file with usage data")
    cal.add_argument("--column", required=True, help="column holding the values")
    cal.add_argument("--bins", type=int, default=60, help="rank bins (default 60)")
    cal.add_argument(
        "--tail-cut", type=float, default=1.0, dest="tail_cut",
        help="top fraction of ranks to fit (default 1.0)",
    )
    cal.add_argument(
        "--sigma", type=float, default=None,
        help="report the implied quality tail shape sigma * slope",
    )
    cal.add_argument("--out", default=".", help="output directory")
    cal.add_argument("--seed", type=int, default=None, help="accepted for uniformity; unused")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "calibrate":
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            return cmd_calibrate(args, out_dir)
        config = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed must be non-negative")
            if config.mc is not None:
                config = dataclasses.replace(
                    config, mc=dataclasses.replace(config.mc, seed=args.seed)
                )
        out_dir = Path(args.out) if args.out is not None else Path(config.output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "solve":
            return cmd_solve(config, out_dir)
        if args.command == "sweep":
            return cmd_sweep(config, out_dir)
        return cmd_simulate(config, out_dir)
    except NonInteriorEquilibriumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, MarketConvergenceError, DegenerateMarketError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        # ConfigError plus bad numeric inputs surfacing below the config layer.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
