"""Command-line front end.

Subcommands: ``transmit``, ``sweep``, ``steady``, ``stability``,
``figure <name>``. Configs are flat INI files whose keys transliterate the
model symbols (gamma_1, Delta_m, theta, phi, y, G, J, eta_1, ...), split into
[model], [sweep] and [output] sections. Exit codes: 0 success, 2 config/usage
error, 3 singular response, 4 pump non-convergence, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

from . import __version__
from .dynamics import is_stable
from .errors import (InvalidRate, InvalidSpec, NonConvergence,
                     NonUniqueSteadyState, SingularSystem, UnknownPreset)
from .params import (DriveConfig, Port, ReducedParams, SolverOptions,
                     SystemParams, reduced_from_direct)
from .response import transmission_general
from .steady import reduce, solve_pump_steady_state
from .sweep import (DEFAULT_GRID_POINTS, DEFAULT_OUTPUTS, SweepAxis,
                    SweepSpec, figure_preset, run_sweep)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_NONCONVERGENCE = 4
EXIT_IO = 5

# frequency-like quantities that unit_scale converts on output
_FREQUENCY_AXES = {"Delta_m", "G", "J", "gamma_1", "gamma_2"}


class ConfigError(Exception):
    """Malformed run configuration; the message names the offending key."""


# ---------------------------------------------------------------------------
# Config ingestion
# ---------------------------------------------------------------------------

def _load_config(path) -> configparser.ConfigParser:
    if path is None:
        raise ConfigError("a --config file is required for this command")
    cfg = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            cfg.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config '{path}': {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config '{path}': {exc}") from exc
    return cfg


def _get_float(cfg, section, key, default=None) -> float:
    if not cfg.has_option(section, key):
        if default is None:
            raise ConfigError(f"missing required key '{key}' in section [{section}]")
        return default
    raw = cfg.get(section, key)
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"key '{key}' in section [{section}] is not a number: {raw!r}") from exc


def _get_int(cfg, section, key, default=None) -> int:
    value = _get_float(cfg, section, key, default=float(default) if default is not None else None)
    if value != int(value):
        raise ConfigError(f"key '{key}' in section [{section}] must be an integer, got {value}")
    return int(value)


def _get_bool(cfg, section, key, default=False) -> bool:
    if not cfg.has_option(section, key):
        return default
    try:
        return cfg.getboolean(section, key)
    except ValueError as exc:
        raise ConfigError(f"key '{key}' in section [{section}] is not a boolean") from exc


def _mode(cfg) -> str:
    if not cfg.has_section("model"):
        raise ConfigError("missing [model] section")
    mode = cfg.get("model", "mode", fallback="direct-reduced").strip()
    if mode not in ("direct-reduced", "full-pipeline"):
        raise ConfigError(f"key 'mode' must be 'direct-reduced' or 'full-pipeline', got {mode!r}")
    return mode


def _reduced_from_model(cfg) -> ReducedParams:
    try:
        return reduced_from_direct(
            G=_get_float(cfg, "model", "G"),
            theta=_get_float(cfg, "model", "theta", 0.0),
            J=_get_float(cfg, "model", "J"),
            gamma_1=_get_float(cfg, "model", "gamma_1"),
            gamma_2=_get_float(cfg, "model", "gamma_2"),
            gamma_m=_get_float(cfg, "model", "gamma_m", 1.0),
            eta_1=_get_float(cfg, "model", "eta_1", 1.0),
            eta_2=_get_float(cfg, "model", "eta_2", 1.0),
            Delta_m=_get_float(cfg, "model", "Delta_m", 0.0),
            Delta_pp_1=_get_float(cfg, "model", "Delta_pp_1", 0.0),
            Delta_pp_2=_get_float(cfg, "model", "Delta_pp_2", 0.0),
            y=_get_float(cfg, "model", "y", 0.0),
            phi=_get_float(cfg, "model", "phi", 0.0),
        )
    except (InvalidRate, ValueError) as exc:
        raise ConfigError(f"invalid [model] values: {exc}") from exc


def _system_from_model(cfg) -> tuple[SystemParams, DriveConfig]:
    port_raw = _get_int(cfg, "model", "probe_port", 1)
    if port_raw not in (1, 2):
        raise ConfigError(f"key 'probe_port' in section [model] must be 1 or 2, got {port_raw}")
    try:
        system = SystemParams(
            omega_1=_get_float(cfg, "model", "omega_1"),
            omega_2=_get_float(cfg, "model", "omega_2"),
            omega_m=_get_float(cfg, "model", "omega_m"),
            gamma_1=_get_float(cfg, "model", "gamma_1"),
            gamma_2=_get_float(cfg, "model", "gamma_2"),
            gamma_m=_get_float(cfg, "model", "gamma_m", 1.0),
            g_1=_get_float(cfg, "model", "g_1"),
            g_2=_get_float(cfg, "model", "g_2"),
            J=_get_float(cfg, "model", "J"),
            eta_1=_get_float(cfg, "model", "eta_1", 1.0),
            eta_2=_get_float(cfg, "model", "eta_2", 1.0),
        )
        drive = DriveConfig(
            omega_d=_get_float(cfg, "model", "omega_d"),
            omega_p=_get_float(cfg, "model", "omega_p"),
            eps_1=_get_float(cfg, "model", "eps_1"),
            eps_2=_get_float(cfg, "model", "eps_2"),
            theta_1=_get_float(cfg, "model", "theta_1", 0.0),
            theta_2=_get_float(cfg, "model", "theta_2", 0.0),
            eps_p=_get_float(cfg, "model", "eps_p", 1.0),
            probe_port=Port.PORT1 if port_raw == 1 else Port.PORT2,
            y=_get_float(cfg, "model", "y", 0.0),
            phi=_get_float(cfg, "model", "phi", 0.0),
        )
    except (InvalidRate, ValueError) as exc:
        raise ConfigError(f"invalid [model] values: {exc}") from exc
    return system, drive


def _solver_options(cfg) -> SolverOptions:
    return SolverOptions(
        tol=_get_float(cfg, "model", "solver_tol", 1e-12),
        max_iter=_get_int(cfg, "model", "solver_max_iter", 10000),
        damping=_get_float(cfg, "model", "solver_damping", 0.5),
    )


def _reduced_from_config(cfg) -> ReducedParams:
    if _mode(cfg) == "direct-reduced":
        return _reduced_from_model(cfg)
    system, drive = _system_from_model(cfg)
    ss = solve_pump_steady_state(system, drive, _solver_options(cfg))
    return reduce(system, drive, ss)


def _sweep_spec_from_config(cfg) -> SweepSpec:
    if not cfg.has_section("sweep"):
        raise ConfigError("missing [sweep] section")
    base = _reduced_from_config(cfg)
    axes = [SweepAxis(
        name=cfg.get("sweep", "axis", fallback=None) or _missing(cfg, "sweep", "axis"),
        start=_get_float(cfg, "sweep", "start"),
        stop=_get_float(cfg, "sweep", "stop"),
        count=_get_int(cfg, "sweep", "count", DEFAULT_GRID_POINTS),
    )]
    if cfg.has_option("sweep", "axis2"):
        axes.append(SweepAxis(
            name=cfg.get("sweep", "axis2"),
            start=_get_float(cfg, "sweep", "start2"),
            stop=_get_float(cfg, "sweep", "stop2"),
            count=_get_int(cfg, "sweep", "count2", DEFAULT_GRID_POINTS),
        ))
    outputs = DEFAULT_OUTPUTS
    if cfg.has_option("sweep", "outputs"):
        outputs = tuple(token.strip() for token in cfg.get("sweep", "outputs").split(",")
                        if token.strip())
    try:
        return SweepSpec(base=base, axes=tuple(axes), outputs=outputs,
                         link_detunings=_get_bool(cfg, "sweep", "link_detunings", False))
    except InvalidSpec as exc:
        raise ConfigError(f"invalid [sweep] section: {exc}") from exc


def _missing(cfg, section, key):
    raise ConfigError(f"missing required key '{key}' in section [{section}]")


# ---------------------------------------------------------------------------
# Report emission
# ---------------------------------------------------------------------------

def _c(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit_json(report: dict, out_path) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _format_float(value: float) -> str:
    return f"{value:.17g}"


def _sweep_csv_lines(result, outputs, unit_scale: float):
    axis_scales = [unit_scale if name in _FREQUENCY_AXES else 1.0
                   for name in result.axis_names]
    header_cols = list(result.axis_names)
    for name in outputs:
        if name in ("t21", "t12"):
            header_cols.extend([f"{name}_re", f"{name}_im"])
        else:
            header_cols.append(name)
    header_cols.append("flag")
    yield f"# optomech-amp v{__version__}"
    yield ",".join(header_cols)
    for row in range(result.n_rows):
        cells = [_format_float(result.axis_rows[row, k] * axis_scales[k])
                 for k in range(len(result.axis_names))]
        for name in outputs:
            value = result.columns[name][row]
            if name in ("t21", "t12"):
                cells.extend([_format_float(value.real), _format_float(value.imag)])
            else:
                cells.append(_format_float(float(value)))
        cells.append("1" if result.flags[row] else "0")
        yield ",".join(cells)


def _sweep_json_report(result, outputs, unit_scale: float) -> dict:
    axes = []
    for name, grid in zip(result.axis_names, result.axis_grids):
        scale = unit_scale if name in _FREQUENCY_AXES else 1.0
        axes.append({"name": name, "values": [v * scale for v in grid.tolist()]})
    columns = {}
    for name in outputs:
        data = result.columns[name]
        if name in ("t21", "t12"):
            columns[name] = [_c(z) for z in data.tolist()]
        else:
            columns[name] = [float(v) for v in data.tolist()]
    metadata = {key: value for key, value in result.metadata.items() if key != "base"}
    metadata["base"] = {k: (_c(v) if isinstance(v, complex) else v)
                        for k, v in result.metadata["base"].items()}
    metadata["unit_scale"] = unit_scale
    return {
        "version": __version__,
        "axes": axes,
        "columns": columns,
        "flags": [int(f) for f in result.flags.tolist()],
        "metadata": metadata,
    }


def _plot_script_text(data_path: str, axis_names, outputs) -> str:
    # gnuplot dialect; 'every ::1' skips the column-header line
    scalar_outputs = [name for name in outputs if name not in ("t21", "t12")]
    lines = ["set datafile separator ','",
             f"set xlabel '{axis_names[0]}'",
             "set key outside"]
    n_axes = len(axis_names)
    if n_axes == 1:
        plots = [f"'{data_path}' every ::1 using 1:{n_axes + k + 1} with lines title '{name}'"
                 for k, name in enumerate(scalar_outputs)]
        lines.append("plot " + ", \\\n     ".join(plots))
    else:
        lines.append(f"set ylabel '{axis_names[1]}'")
        first = scalar_outputs[0] if scalar_outputs else "flag"
        lines.append(f"splot '{data_path}' every ::1 using 1:2:3 with pm3d title '{first}'")
    return "\n".join(lines) + "\n"


def _write_sweep_output(result, outputs, fmt, out_path, plot_script, unit_scale) -> None:
    if fmt == "json":
        report = _sweep_json_report(result, outputs, unit_scale)
        _emit_json(report, out_path)
    else:
        lines = _sweep_csv_lines(result, outputs, unit_scale)
        if out_path:
            with open(out_path, "w", encoding="utf-8") as handle:
                for line in lines:
                    handle.write(line + "\n")
        else:
            for line in lines:
                print(line)
    if plot_script:
        if not out_path:
            raise ConfigError("--plot-script requires an output file path (--out)")
        out = Path(out_path)
        script = out.with_suffix(out.suffix + ".gp") if out.suffix != ".csv" \
            else out.with_suffix(".gp")
        script.write_text(_plot_script_text(out.name, result.axis_names, outputs),
                          encoding="utf-8")


def _thread_count() -> int:
    raw = os.environ.get("OPTOMECH_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _output_settings(cfg, args):
    """Resolve output path / format / plot flag; CLI flags win over [output]."""
    fmt = args.format
    path = args.out
    plot = getattr(args, "plot_script", False)
    unit_scale = 1.0
    if cfg is not None and cfg.has_section("output"):
        if fmt is None:
            fmt = cfg.get("output", "format", fallback=None)
        if path is None:
            path = cfg.get("output", "path", fallback=None)
        plot = plot or _get_bool(cfg, "output", "plot_script", False)
        unit_scale = _get_float(cfg, "output", "unit_scale", 1.0)
    fmt = (fmt or "csv").lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"key 'format' must be 'csv' or 'json', got {fmt!r}")
    return fmt, path, plot, unit_scale


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_transmit(args) -> int:
    cfg = _load_config(args.config)
    rp = _reduced_from_config(cfg)
    result = transmission_general(rp)
    report = {
        "t21": _c(result.t21),
        "t12": _c(result.t12),
        "T21": result.T21,
        "T12": result.T12,
        "isolation_db": result.isolation_db,
        "stable": is_stable(rp).stable,
    }
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_steady(args) -> int:
    cfg = _load_config(args.config)
    if _mode(cfg) != "full-pipeline":
        raise ConfigError("key 'mode' must be 'full-pipeline' for the steady command")
    system, drive = _system_from_model(cfg)
    ss = solve_pump_steady_state(system, drive, _solver_options(cfg))
    report = {
        "a1": _c(ss.a1_avg),
        "a2": _c(ss.a2_avg),
        "b": _c(ss.b_avg),
        "delta_1_prime": ss.delta_1_prime,
        "delta_2_prime": ss.delta_2_prime,
        "G_1": _c(system.g_1 * ss.a1_avg),
        "G_2": _c(system.g_2 * ss.a2_avg),
        "iterations": ss.iterations,
        "residual": ss.residual,
    }
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_stability(args) -> int:
    cfg = _load_config(args.config)
    rp = _reduced_from_config(cfg)
    report = is_stable(rp)
    _emit_json({
        "stable": report.stable,
        "margin": report.margin,
        "marginal": report.marginal,
        "eigenvalues": [_c(lam) for lam in report.eigenvalues.tolist()],
    }, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config) if args.config else None
    if getattr(args, "figure", None):
        spec = figure_preset(args.figure, count=args.count or DEFAULT_GRID_POINTS)
    elif cfg is not None:
        spec = _sweep_spec_from_config(cfg)
    else:
        raise ConfigError("provide --config with a [sweep] section or --figure <name>")
    fmt, out_path, plot, unit_scale = _output_settings(cfg, args)
    result = run_sweep(spec, workers=_thread_count())
    _write_sweep_output(result, spec.outputs, fmt, out_path, plot, unit_scale)
    return EXIT_OK


def cmd_figure(args) -> int:
    spec = figure_preset(args.name, count=args.count or DEFAULT_GRID_POINTS)
    fmt, out_path, plot, unit_scale = _output_settings(None, args)
    if out_path is None and fmt == "csv":
        out_path = f"{args.name}.csv"
    result = run_sweep(spec, workers=_thread_count())
    _write_sweep_output(result, spec.outputs, fmt, out_path, plot, unit_scale)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optomech-amp",
        description="Directional optical amplification in a three-mode optomechanical system.")
    parser.add_argument("--version", action="version", version=f"optomech-amp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_config=True):
        p.add_argument("--config", required=needs_config, help="INI config file")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)

    p_transmit = sub.add_parser("transmit", help="single-point transmission report (JSON)")
    add_common(p_transmit)
    p_transmit.set_defaults(func=cmd_transmit)

    p_sweep = sub.add_parser("sweep", help="grid sweep to CSV/JSON")
    add_common(p_sweep, needs_config=False)
    p_sweep.add_argument("--figure", default=None, help="use a figure preset instead of [sweep]")
    p_sweep.add_argument("--count", type=int, default=None, help="preset grid points per axis")
    p_sweep.add_argument("--plot-script", action="store_true", dest="plot_script")
    p_sweep.set_defaults(func=cmd_sweep)

    p_steady = sub.add_parser("steady", help="pump steady-state report (JSON)")
    add_common(p_steady)
    p_steady.set_defaults(func=cmd_steady)

    p_stab = sub.add_parser("stability", help="drift-matrix stability report (JSON)")
    add_common(p_stab)
    p_stab.set_defaults(func=cmd_stability)

    p_fig = sub.add_parser("figure", help="run a named figure preset")
    p_fig.add_argument("name", help="fig2a|fig2b|fig2c|fig3a|fig3b|fig4")
    p_fig.add_argument("--out", default=None)
    p_fig.add_argument("--format", choices=("csv", "json"), default=None)
    p_fig.add_argument("--count", type=int, default=None)
    p_fig.add_argument("--plot-script", action="store_true", dest="plot_script")
    p_fig.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (UnknownPreset, InvalidSpec, InvalidRate, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularSystem as exc:
        print(f"singular response: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except NonUniqueSteadyState as exc:
        print(f"pump solver: {exc}", file=sys.stderr)
        for k, branch in enumerate(exc.branches):
            print(f"  branch {k}: b = {branch.b_avg:.6g}, "
                  f"detunings = ({branch.delta_1_prime:.6g}, {branch.delta_2_prime:.6g})",
                  file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except NonConvergence as exc:
        print(f"pump solver: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
