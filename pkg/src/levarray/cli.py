"""Command-line runner: scenario presets, config parsing, CSV artifacts.

A scenario bundles a figure-of-merit objective, a coupling symmetry
mode, and default sweep grids.  Running one produces:

* ``landscape.csv``: one row per (lambda1, lambda2) grid point with the
  optimized couplings, all six negativities, gated figures of merit,
  stability flag, and collective-mode occupations;
* ``cuts.csv``: the same columns along the fixed-lambda2 cut line(s);
* ``summary.csv``: the located maxima with their lambda/G arguments;
* ``squeezing.csv``: catalog quadrature variances at the located maxima.

Configuration is flat ``key = value`` text with dotted keys; command
line ``--set`` overrides beat the file, and dedicated flags beat both.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import check as check_mod
from .analysis import (
    PAIR_LABELS,
    SPLIT_LABELS,
    all_quadrature_variances,
    SQUEEZING_TOL,
)
from .errors import ConfigError, LevarrayError
from .optimize import (
    OptimizationProblem,
    SweepGrid,
    SweepPoint,
    brute_force_verify,
    mechanical_steady_state,
    parse_objective,
    sweep_lambda,
)
from .system import SystemParams

#: Default output directory when neither flag, config, nor environment set one.
DEFAULT_OUT = "levarray-out"

#: Environment variable overriding the default output directory.
OUT_ENV_VAR = "LEVARRAY_OUT"

#: Columns of landscape.csv and cuts.csv, in order.
ROW_COLUMNS = (
    "lambda1",
    "lambda2",
    "lambda3",
    "G1",
    "G2",
    "G3",
    "E_pair_12",
    "E_pair_23",
    "E_pair_31",
    "E_split_1_23",
    "E_split_2_31",
    "E_split_3_12",
    "fom_E1",
    "fom_E2",
    "fom_E3",
    "stable",
    "n_eff_1",
    "n_eff_2",
    "n_eff_3",
)

SUMMARY_COLUMNS = (
    "source",
    "objective",
    "value",
    "lambda1",
    "lambda2",
    "lambda3",
    "G1",
    "G2",
    "G3",
    "oracle_value",
)

SQUEEZING_COLUMNS = ("case", "quadrature", "variance", "squeezed")


@dataclass(frozen=True)
class Scenario:
    """A named preset: description plus default configuration pairs."""

    name: str
    description: str
    defaults: tuple[tuple[str, str], ...]


def _span(axis: str, start: float, stop: float, step: float) -> tuple[tuple[str, str], ...]:
    return (
        (f"grid.{axis}.start", repr(start)),
        (f"grid.{axis}.stop", repr(stop)),
        (f"grid.{axis}.step", repr(step)),
    )


def _cut_line(lambda2: str) -> tuple[tuple[str, str], ...]:
    return (("cut.lambda2", lambda2), ("cut.step", "0.01"))


SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario(
            "fig2a",
            "equal couplings, all-pairs dyadic figure; full landscape plus the"
            " lambda2=0.8 cut",
            (("objective", "dyadic-3"), ("symmetric", "true"))
            + _span("lambda1", 0.0, 1.5, 0.02)
            + _span("lambda2", 0.0, 1.5, 0.02)
            + _cut_line("0.8"),
        ),
        Scenario(
            "fig2b",
            "free couplings, two-pair dyadic figure along the lambda2=0.23 cut",
            (("objective", "dyadic-2"), ("symmetric", "false"))
            + _span("lambda1", 0.0, 1.5, 0.01)
            + _span("lambda2", 0.23, 0.23, 0.01)
            + _cut_line("0.23"),
        ),
        Scenario(
            "fig2c",
            "free couplings, one-pair dyadic figure along the lambda2=0.01 cut",
            (("objective", "dyadic-1"), ("symmetric", "false"))
            + _span("lambda1", 0.0, 1.5, 0.01)
            + _span("lambda2", 0.01, 0.01, 0.01)
            + _cut_line("0.01"),
        ),
        Scenario(
            "fig3a",
            "equal couplings, all-splits triadic figure; full landscape plus"
            " the lambda2=0.91 and 0.92 cuts",
            (("objective", "triadic-3"), ("symmetric", "true"))
            + _span("lambda1", 0.0, 1.5, 0.02)
            + _span("lambda2", 0.0, 1.5, 0.02)
            + _cut_line("0.91,0.92"),
        ),
        Scenario(
            "fig3b",
            "free couplings, two-split triadic figure along the lambda2=0.53 cut",
            (("objective", "triadic-2"), ("symmetric", "false"))
            + _span("lambda1", 0.0, 1.5, 0.01)
            + _span("lambda2", 0.53, 0.53, 0.01)
            + _cut_line("0.53"),
        ),
        Scenario(
            "fig3c",
            "free couplings, one-split triadic figure along the lambda2=1.01 cut",
            (("objective", "triadic-1"), ("symmetric", "false"))
            + _span("lambda1", 0.0, 1.5, 0.01)
            + _span("lambda2", 1.01, 1.01, 0.01)
            + _cut_line("1.01"),
        ),
        Scenario(
            "fig4a",
            "two-particle collective modes, equal couplings, all-splits"
            " triadic figure versus lambda1",
            (
                ("objective", "triadic-3"),
                ("symmetric", "true"),
                ("two_particle", "true"),
            )
            + _span("lambda1", 0.0, 1.5, 0.01),
        ),
        Scenario(
            "fig4b",
            "two-particle collective modes, free couplings, all-splits"
            " triadic figure versus lambda1",
            (
                ("objective", "triadic-3"),
                ("symmetric", "false"),
                ("two_particle", "true"),
            )
            + _span("lambda1", 0.0, 1.5, 0.01),
        ),
        Scenario(
            "table1",
            "squeezing catalog at the six reference optima (the dyadic and"
            " triadic cut maxima); writes summary.csv and squeezing.csv",
            (),
        ),
        Scenario(
            "custom",
            "fully config-driven scenario; defaults to a coarse equal-coupling"
            " demonstration sweep",
            (("objective", "dyadic-3"), ("symmetric", "true"))
            + _span("lambda1", 0.0, 1.5, 0.1)
            + _span("lambda2", 0.8, 0.8, 0.1)
            + (("cut.lambda2", "0.8"), ("cut.step", "0.1")),
        ),
    )
}

#: Reference cases evaluated by the table1 scenario: scenario name per case.
TABLE1_CASES = ("fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c")


# --- configuration -------------------------------------------------------

_FLOAT_KEYS = {
    "params.nbar",
    "params.kappa",
    "params.gamma",
    "params.quality_factor",
    "optimizer.g_max",
    "grid.lambda1.start",
    "grid.lambda1.stop",
    "grid.lambda1.step",
    "grid.lambda2.start",
    "grid.lambda2.stop",
    "grid.lambda2.step",
    "cut.step",
}
_INT_KEYS = {"workers"}
_BOOL_KEYS = {"symmetric", "two_particle", "oracle", "polish"}
_STR_KEYS = {"scenario", "objective", "output.dir"}
_LIST_KEYS = {"cut.lambda2"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS | _LIST_KEYS


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved run configuration."""

    scenario: str
    params: SystemParams
    objective: str
    symmetric: bool
    two_particle: bool
    g_max: float
    grid_lambda1: tuple[float, float, float]
    grid_lambda2: tuple[float, float, float]
    cut_lambda2: tuple[float, ...]
    cut_step: float
    out_dir: str | None
    workers: int
    oracle: bool
    polish: bool


def _parse_value(key: str, raw: str, line: int | None) -> object:
    raw = raw.strip()
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _BOOL_KEYS:
            if raw.lower() in ("true", "1", "yes", "on"):
                return True
            if raw.lower() in ("false", "0", "no", "off"):
                return False
            raise ValueError(raw)
        if key in _LIST_KEYS:
            return tuple(float(v) for v in raw.split(",") if v.strip())
        return raw
    except ValueError:
        raise ConfigError(
            f"invalid value {raw!r} for key {key!r}"
            + (f" (line {line})" if line else ""),
            key=key,
            line=line,
        ) from None


def _read_config_file(path: str | Path) -> list[tuple[str, object, int]]:
    """Parse a flat key=value file into (key, typed value, line) tuples."""
    entries: list[tuple[str, object, int]] = []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(
                f"malformed line {lineno}: expected 'key = value', got {line!r}",
                line=lineno,
            )
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(
                f"unknown key {key!r} (line {lineno})", key=key, line=lineno
            )
        entries.append((key, _parse_value(key, raw, lineno), lineno))
    return entries


def parse_config(
    scenario: str | None = None,
    config_path: str | Path | None = None,
    overrides: list[str] | None = None,
    out_dir: str | None = None,
    workers: int | None = None,
    oracle: bool | None = None,
) -> ScenarioConfig:
    """Resolve a scenario configuration from presets, file, and flags.

    Precedence, lowest to highest: scenario preset defaults, config file
    entries, ``--set key=value`` overrides, dedicated flags.

    Raises
    ------
    ConfigError
        For unknown scenarios or keys, malformed values (with the line
        number when the error comes from a file), or conflicting keys.
    """
    values: dict[str, object] = {}
    file_entries = _read_config_file(config_path) if config_path else []
    for key, val, _ in file_entries:
        values[key] = val
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"malformed --set {item!r}: expected key=value")
        key, raw = (part.strip() for part in item.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r} in --set", key=key)
        values[key] = _parse_value(key, raw, None)

    name = scenario or values.get("scenario")
    if not name:
        raise ConfigError("no scenario given (argument or 'scenario' key)")
    if name not in SCENARIOS:
        raise ConfigError(
            f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}",
            key="scenario",
        )
    resolved: dict[str, object] = {
        key: _parse_value(key, raw, None) for key, raw in SCENARIOS[name].defaults
    }
    resolved.update(values)
    if out_dir is not None:
        resolved["output.dir"] = out_dir
    if workers is not None:
        resolved["workers"] = workers
    if oracle is not None:
        resolved["oracle"] = oracle

    if "params.gamma" in resolved and "params.quality_factor" in resolved:
        raise ConfigError(
            "conflicting keys: give either params.gamma or params.quality_factor",
            key="params.quality_factor",
        )
    gamma = resolved.get("params.gamma", 2e-10)
    if "params.quality_factor" in resolved:
        q = float(resolved["params.quality_factor"])
        if q <= 0:
            raise ConfigError("params.quality_factor must be positive", key="params.quality_factor")
        gamma = 1.0 / q
    try:
        params = SystemParams(
            kappa=float(resolved.get("params.kappa", 0.4)),
            gamma=float(gamma),
            nbar=float(resolved.get("params.nbar", 2e7)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid system parameters: {exc}") from exc

    objective = str(resolved.get("objective", "dyadic-3"))
    try:
        parse_objective(objective)
    except ValueError as exc:
        raise ConfigError(str(exc), key="objective") from exc

    def span(axis: str, fallback: tuple[float, float, float]) -> tuple[float, float, float]:
        start = float(resolved.get(f"grid.{axis}.start", fallback[0]))
        stop = float(resolved.get(f"grid.{axis}.stop", fallback[1]))
        step = float(resolved.get(f"grid.{axis}.step", fallback[2]))
        if step <= 0 or stop < start:
            raise ConfigError(
                f"invalid grid.{axis} span: start={start} stop={stop} step={step}",
                key=f"grid.{axis}.step",
            )
        return (start, stop, step)

    n_workers = int(resolved.get("workers", 1))
    if n_workers < 1:
        raise ConfigError("workers must be >= 1", key="workers")
    cut_step = float(resolved.get("cut.step", 0.01))
    if cut_step <= 0:
        raise ConfigError("cut.step must be positive", key="cut.step")
    g_max = float(resolved.get("optimizer.g_max", 0.4))
    if g_max <= 0:
        raise ConfigError("optimizer.g_max must be positive", key="optimizer.g_max")

    return ScenarioConfig(
        scenario=name,
        params=params,
        objective=objective,
        symmetric=bool(resolved.get("symmetric", False)),
        two_particle=bool(resolved.get("two_particle", False)),
        g_max=g_max,
        grid_lambda1=span("lambda1", (0.0, 1.5, 0.02)),
        grid_lambda2=span("lambda2", (0.0, 1.5, 0.02)),
        cut_lambda2=tuple(resolved.get("cut.lambda2", ())),
        cut_step=cut_step,
        out_dir=resolved.get("output.dir"),
        workers=n_workers,
        oracle=bool(resolved.get("oracle", False)),
        polish=bool(resolved.get("polish", True)),
    )


def resolve_out_dir(config: ScenarioConfig) -> Path:
    """Output directory: flag/config value, else $LEVARRAY_OUT, else default."""
    base = config.out_dir or os.environ.get(OUT_ENV_VAR) or DEFAULT_OUT
    return Path(base) / config.scenario


# --- sweep orchestration -------------------------------------------------


def _axis_values(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = int(round((stop - start) / step)) if stop > start else 0
    return tuple(float(start + i * step) for i in range(n + 1))


def _template(config: ScenarioConfig) -> OptimizationProblem:
    arity, count = parse_objective(config.objective)
    return OptimizationProblem(
        lambda1=0.0,
        lambda2=0.0,
        arity=arity,
        count=count,
        params=config.params,
        g_max=config.g_max,
        symmetric=config.symmetric,
        two_particle=config.two_particle,
    )


def _best_point(points: list[SweepPoint]) -> SweepPoint:
    return min(points, key=lambda p: (-p.value, p.lambda1, p.lambda2))


def _row_record(point: SweepPoint, arity: int) -> dict[str, object]:
    fom = point.dyadic_fom if arity == 2 else point.triadic_fom
    rec: dict[str, object] = {
        "lambda1": point.lambda1,
        "lambda2": point.lambda2,
        "lambda3": point.lambda3,
        "G1": point.g[0],
        "G2": point.g[1],
        "G3": point.g[2],
        "stable": int(point.stable),
    }
    for label in PAIR_LABELS:
        rec[f"E_pair_{label}"] = point.dyadic[label]
    for label in SPLIT_LABELS:
        rec[f"E_split_{label.replace('|', '_')}"] = point.triadic[label]
    rec["fom_E1"] = fom.e1 if fom else 0.0
    rec["fom_E2"] = fom.e2 if fom else 0.0
    rec["fom_E3"] = fom.e3 if fom else 0.0
    for k in range(3):
        rec[f"n_eff_{k + 1}"] = point.n_eff[k]
    return rec


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _write_csv(path: Path, columns: tuple[str, ...], records: list[dict[str, object]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_fmt(rec.get(col, "")) for col in columns])


def _sorted_records(points: list[SweepPoint], arity: int) -> list[dict[str, object]]:
    ordered = sorted(points, key=lambda p: (p.lambda1, p.lambda2))
    return [_row_record(p, arity) for p in ordered]


def _squeezing_records(
    case: str, problem: OptimizationProblem, g: tuple[float, float, float]
) -> list[dict[str, object]]:
    v_mech = mechanical_steady_state(problem, g)
    if v_mech is None:
        return []
    records = []
    for label, var in all_quadrature_variances(v_mech).items():
        records.append(
            {
                "case": case,
                "quadrature": label,
                "variance": var,
                "squeezed": int(var < 1.0 - SQUEEZING_TOL),
            }
        )
    return records


def _summary_record(
    source: str,
    objective: str,
    point: SweepPoint,
    oracle_value: float | None,
) -> dict[str, object]:
    return {
        "source": source,
        "objective": objective,
        "value": point.value,
        "lambda1": point.lambda1,
        "lambda2": point.lambda2,
        "lambda3": point.lambda3,
        "G1": point.g[0],
        "G2": point.g[1],
        "G3": point.g[2],
        "oracle_value": "" if oracle_value is None else oracle_value,
    }


def _oracle_check(
    config: ScenarioConfig, point: SweepPoint
) -> float:
    """Brute-force lattice value at the located maximum's lambda point."""
    problem = replace(
        _template(config), lambda1=point.lambda1, lambda2=point.lambda2
    )
    if config.two_particle:
        problem = replace(problem, lambda2=0.0)
    resolution = 0.01 if config.symmetric else 0.05
    value, _ = brute_force_verify(problem, resolution)
    if point.value < value - 1e-6:
        raise LevarrayError(
            f"optimizer value {point.value:.6g} fell below the lattice oracle "
            f"{value:.6g} at lambda1={point.lambda1:g}"
        )
    return value


def _scan_cut(
    config: ScenarioConfig, lambda2: float | None, workers: int
) -> list[SweepPoint]:
    start, stop, _ = config.grid_lambda1
    values = _axis_values(start, stop, config.cut_step)
    grid = SweepGrid(
        template=_template(config),
        lambda1_values=values,
        lambda2_values=(lambda2,) if lambda2 is not None else (0.0,),
    )
    return sweep_lambda(grid, workers=workers, polish_argmax=config.polish)


def _run_standard(config: ScenarioConfig, out: Path) -> int:
    arity, _ = parse_objective(config.objective)
    cut_values = () if config.two_particle else config.cut_lambda2
    cut_points: dict[float | None, list[SweepPoint]] = {}
    for lam2 in cut_values:
        print(f"scanning cut lambda2={lam2:g} ...", flush=True)
        cut_points[lam2] = _scan_cut(config, lam2, config.workers)

    l1 = config.grid_lambda1
    l2 = config.grid_lambda2
    if config.two_particle:
        print("scanning lambda1 axis ...", flush=True)
        landscape = _scan_cut(config, None, config.workers)
        cut_points = {None: landscape}
    elif (
        l2[0] == l2[1]
        and l2[0] in cut_points
        and abs(l1[2] - config.cut_step) < 1e-12
    ):
        landscape = cut_points[l2[0]]
    else:
        print(
            f"sweeping landscape {l1[0]:g}..{l1[1]:g} x {l2[0]:g}..{l2[1]:g} ...",
            flush=True,
        )
        grid = SweepGrid(
            template=_template(config),
            lambda1_values=_axis_values(*l1),
            lambda2_values=_axis_values(*l2),
        )
        landscape = sweep_lambda(grid, workers=config.workers, polish_argmax=config.polish)

    summary: list[dict[str, object]] = []
    squeezing: list[dict[str, object]] = []
    best_landscape = _best_point(landscape)
    oracle_value = _oracle_check(config, best_landscape) if config.oracle else None
    summary.append(
        _summary_record("landscape", config.objective, best_landscape, oracle_value)
    )
    for lam2, points in cut_points.items():
        best = _best_point(points)
        source = "landscape" if lam2 is None else f"cut-{lam2:g}"
        if lam2 is not None:
            oracle_value = _oracle_check(config, best) if config.oracle else None
            summary.append(_summary_record(source, config.objective, best, oracle_value))
        print(
            f"{source}: max {config.objective} = {best.value:.6g} at "
            f"lambda1={best.lambda1:g}, G=({best.g[0]:.4g}, {best.g[1]:.4g}, "
            f"{best.g[2]:.4g})",
            flush=True,
        )

    overall = _best_point([_best_point(pts) for pts in cut_points.values()] or [best_landscape])
    problem = replace(_template(config), lambda1=overall.lambda1, lambda2=overall.lambda2)
    if config.two_particle:
        problem = replace(problem, lambda2=0.0)
    squeezing.extend(_squeezing_records(config.scenario, problem, overall.g))

    _write_csv(out / "landscape.csv", ROW_COLUMNS, _sorted_records(landscape, arity))
    all_cut_points = [p for pts in cut_points.values() for p in pts]
    if all_cut_points:
        _write_csv(out / "cuts.csv", ROW_COLUMNS, _sorted_records(all_cut_points, arity))
    _write_csv(out / "summary.csv", SUMMARY_COLUMNS, summary)
    _write_csv(out / "squeezing.csv", SQUEEZING_COLUMNS, squeezing)
    return 0


def _run_table1(config: ScenarioConfig, out: Path) -> int:
    summary: list[dict[str, object]] = []
    squeezing: list[dict[str, object]] = []
    for case in TABLE1_CASES:
        case_config = parse_config(
            scenario=case,
            workers=config.workers,
            oracle=config.oracle,
        )
        case_config = replace(
            case_config, params=config.params, polish=config.polish, g_max=config.g_max
        )
        print(f"locating {case} cut maximum ...", flush=True)
        points: list[SweepPoint] = []
        for lam2 in case_config.cut_lambda2:
            points.extend(_scan_cut(case_config, lam2, config.workers))
        best = _best_point(points)
        oracle_value = _oracle_check(case_config, best) if config.oracle else None
        summary.append(
            _summary_record(case, case_config.objective, best, oracle_value)
        )
        problem = replace(
            _template(case_config), lambda1=best.lambda1, lambda2=best.lambda2
        )
        squeezing.extend(_squeezing_records(case, problem, best.g))
    _write_csv(out / "summary.csv", SUMMARY_COLUMNS, summary)
    _write_csv(out / "squeezing.csv", SQUEEZING_COLUMNS, squeezing)
    return 0


def run_scenario(config: ScenarioConfig) -> int:
    """Run one scenario end to end, writing artifacts to the output directory.

    Returns a process exit status: 0 on success.  Configuration and I/O
    failures raise; the command-line wrapper converts them into nonzero
    exits with a diagnostic line.
    """
    out = resolve_out_dir(config)
    out.mkdir(parents=True, exist_ok=True)
    if config.scenario == "table1":
        status = _run_table1(config, out)
    else:
        status = _run_standard(config, out)
    print(f"artifacts written to {out}", flush=True)
    return status


# --- command-line interface ----------------------------------------------


def _cmd_run(args: argparse.Namespace) -> int:
    config = parse_config(
        scenario=args.scenario,
        config_path=args.config,
        overrides=args.set or [],
        out_dir=args.out,
        workers=args.workers,
        oracle=True if args.oracle else None,
    )
    return run_scenario(config)


def _cmd_list(_: argparse.Namespace) -> int:
    width = max(len(name) for name in SCENARIOS)
    for name, scenario in SCENARIOS.items():
        print(f"{name:<{width}}  {scenario.description}")
    return 0


def _cmd_check(_: argparse.Namespace) -> int:
    return check_mod.run_checks()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levarray",
        description=(
            "Steady-state entanglement of three levitated nanoparticles "
            "coupled to three cavity modes"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and write CSV artifacts")
    run_p.add_argument("scenario", choices=sorted(SCENARIOS))
    run_p.add_argument("--config", help="flat key=value configuration file")
    run_p.add_argument("--out", help="output directory (default: $LEVARRAY_OUT or ./levarray-out)")
    run_p.add_argument("--workers", type=int, help="parallel worker processes")
    run_p.add_argument("--oracle", action="store_true", help="verify maxima against a brute-force coupling lattice")
    run_p.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a configuration key (repeatable)",
    )
    run_p.set_defaults(func=_cmd_run)

    list_p = sub.add_parser("list-scenarios", help="list scenario presets")
    list_p.set_defaults(func=_cmd_list)

    check_p = sub.add_parser("check", help="run the fast invariant suite")
    check_p.set_defaults(func=_cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: i/o: {exc}", file=sys.stderr)
        return 1
    except LevarrayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
