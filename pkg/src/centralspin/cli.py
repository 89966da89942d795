"""Command-line front end: trajectories, sweeps, QFI, scaling fits, oracle checks.

Configuration comes from flags and/or a plain-text key=value file (flags win).
Angles are accepted in radians or as multiples of pi with a suffix, e.g.
``2pi``, ``0.5pi``, ``-pi``; every special drive point is an exact pi
multiple, so the suffix form avoids decimal drift.  All outputs are written
atomically: a CSV body plus a ``.meta.json`` sidecar holding the resolved
configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .drive import DriveParams
from .metrology import qfi_lambda_scan, qfi_over_periods, scaling_fit
from .oracle import oracle_check
from .states import Axis
from .sweep import SweepGrid, atomic_write_text, fmt, sweep_grid, write_json_sidecar, write_sweep_csv
from .trajectory import choose_backend, new_product_state, run_trajectory

WORKERS_ENV = "CENTRALSPIN_WORKERS"


def parse_angle(text: str) -> float:
    """Radians from '1.57', '2pi', '0.5pi', 'pi', or '-pi'."""
    s = str(text).strip().lower()
    if s.endswith("pi"):
        head = s[:-2].strip()
        if head in ("", "+"):
            factor = 1.0
        elif head == "-":
            factor = -1.0
        else:
            factor = float(head)
        return factor * math.pi
    return float(s)


def parse_angle_list(text: str) -> tuple[float, ...]:
    return tuple(parse_angle(part) for part in str(text).split(",") if part.strip())


def parse_int_range(text: str) -> tuple[int, ...]:
    """'10..100' (inclusive), '4..13', or a comma list / single integer."""
    s = str(text).strip()
    if ".." in s:
        lo, hi = s.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(p) for p in s.split(",") if p.strip())


def parse_grid(text: str) -> np.ndarray:
    """'min:max:count' with angle syntax for the endpoints."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec {text!r} is not min:max:count")
    lo, hi, count = parse_angle(parts[0]), parse_angle(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("grid needs at least one point")
    return np.linspace(lo, hi, count)


def parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def read_config_file(path: str) -> dict:
    """Plain-text key=value configuration, '#' comments, UTF-8."""
    out = {}
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {raw.rstrip()!r} is not key=value")
            key, value = line.split("=", 1)
            out[key.strip().lower().replace("-", "_")] = value.strip()
    return out


@dataclass
class Opt:
    convert: object
    default: object
    help: str
    flag: bool = False


def _drive_opts():
    return {
        "n_sat": Opt(int, "19", "number of satellite spins"),
        "lam": Opt(parse_angle, "2pi", "Ising coupling (radians or Npi)"),
        "g": Opt(parse_angle, "pi", "field applied to satellites and central spin"),
        "g_sat": Opt(parse_angle_list, "", "per-satellite fields, comma list (overrides --g)"),
        "g_c": Opt(parse_angle, "", "central-spin field (overrides --g)"),
        "backend": Opt(str, "auto", "state backend: auto|full|symmetric"),
    }


OPTIONS: dict[str, dict[str, Opt]] = {
    "evolve": {
        **_drive_opts(),
        "periods": Opt(int, "100", "number of drive periods"),
        "half_periods": Opt(parse_bool, "false", "also record post-kick samples", flag=True),
        "sat_axis": Opt(Axis, "+x", "initial satellite axis"),
        "central_axis": Opt(Axis, "+x", "initial central-spin axis"),
    },
    "sweep": {
        "n_sat": Opt(int, "19", "number of satellite spins"),
        "quantity": Opt(str, "M_bar", "M_bar|O_bar|Z_bar|G"),
        "lambda_range": Opt(parse_grid, "0:4pi:101", "coupling grid min:max:count"),
        "g_range": Opt(parse_grid, "0:2pi:101", "field grid min:max:count"),
        "window": Opt(int, "0", "averaging window (0 = quantity default)"),
        "periods": Opt(int, "100", "evolution periods for quantity G"),
        "delta": Opt(float, "1e-4", "stencil step for quantity G"),
        "backend": Opt(str, "auto", "state backend"),
    },
    "qfi": {
        "n_sat": Opt(int, "19", "number of satellite spins"),
        "lam": Opt(parse_angle, "pi", "Ising coupling"),
        "g": Opt(parse_angle, "0.5pi", "drive field"),
        "periods": Opt(parse_int_range, "100", "period count or range a..b"),
        "delta": Opt(float, "1e-4", "central-difference step"),
        "backend": Opt(str, "auto", "state backend"),
        "fit": Opt(parse_bool, "false", "fit G against the period count", flag=True),
    },
    "qfi-scan": {
        "n_sat": Opt(int, "19", "number of satellite spins"),
        "lambda_range": Opt(parse_grid, "0.2pi:1.8pi:33", "coupling grid min:max:count"),
        "g": Opt(parse_angle, "0.5pi", "drive field"),
        "periods": Opt(int, "100", "evolution periods"),
        "delta": Opt(float, "1e-4", "central-difference step"),
        "backend": Opt(str, "auto", "state backend"),
    },
    "scaling": {
        "mode": Opt(str, "sizes", "fit dimension: sizes|periods"),
        "sizes": Opt(parse_int_range, "5..19", "satellite counts (sizes mode)"),
        "n_sat": Opt(int, "19", "satellite count (periods mode)"),
        "periods": Opt(parse_int_range, "100", "period count (or range in periods mode)"),
        "lam": Opt(parse_angle, "pi", "Ising coupling"),
        "g": Opt(parse_angle, "0.5pi", "drive field"),
        "delta": Opt(float, "1e-4", "central-difference step"),
        "backend": Opt(str, "auto", "state backend"),
    },
    "oracle-check": {
        "n_sat": Opt(parse_int_range, "4..13", "satellite counts, e.g. 4..13"),
        "backend": Opt(str, "full", "state backend used for the simulation"),
        "tol": Opt(float, "1e-10", "fidelity tolerance"),
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centralspin",
        description="Simulator for the periodically driven central spin model.",
    )
    parser.add_argument("--version", action="version", version=f"centralspin {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    for command, table in OPTIONS.items():
        sp = subs.add_parser(command)
        sp.add_argument("--config", default=None, help="key=value configuration file")
        sp.add_argument("--out", default=None, help="output CSV path")
        sp.add_argument("--workers", default=None,
                        help=f"worker processes (default ${WORKERS_ENV} or 1)")
        for name, opt in table.items():
            # 'lambda' is reserved in python, so the option key is 'lam'
            flag = "--lambda" if name == "lam" else "--" + name.replace("_", "-")
            if opt.flag:
                sp.add_argument(flag, dest=name, action="store_const", const="true",
                                default=None, help=opt.help)
            else:
                sp.add_argument(flag, dest=name, default=None, help=opt.help)
    return parser


def resolve_config(command: str, args: argparse.Namespace) -> dict:
    """Merge defaults < config file < explicit flags, then convert values."""
    table = OPTIONS[command]
    raw = {name: opt.default for name, opt in table.items()}
    if args.config:
        for key, value in read_config_file(args.config).items():
            if key == "lambda":
                key = "lam"
            if key in table:
                raw[key] = value
            elif key in ("out", "workers"):
                raw[key] = value
            else:
                raise ValueError(f"unknown config key {key!r} for {command}")
    for name in table:
        supplied = getattr(args, name, None)
        if supplied is not None:
            raw[name] = supplied
    resolved = {}
    for name, opt in table.items():
        text = raw[name]
        resolved[name] = opt.convert(text) if text != "" else None
    resolved["out"] = args.out or raw.get("out") or f"{command.replace('-', '_')}.csv"
    workers = args.workers or raw.get("workers") or os.environ.get(WORKERS_ENV, "1")
    resolved["workers"] = int(workers)
    return resolved


def _drive_from(cfg: dict) -> DriveParams:
    g_sat = cfg.get("g_sat") or cfg["g"]
    if isinstance(g_sat, tuple) and len(g_sat) == 1:
        g_sat = g_sat[0]
    g_c = cfg["g_c"] if cfg.get("g_c") is not None else cfg["g"]
    return DriveParams(lam=cfg["lam"], g_sat=g_sat, g_c=g_c)


def _sidecar(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".meta.json"


def _jsonable(cfg: dict) -> dict:
    out = {}
    for key, value in cfg.items():
        if isinstance(value, np.ndarray):
            out[key] = [float(v) for v in value]
        elif isinstance(value, tuple):
            out[key] = list(value)
        elif isinstance(value, Axis):
            out[key] = value.value
        else:
            out[key] = value
    return out


def cmd_evolve(cfg: dict) -> str:
    params = _drive_from(cfg)
    backend = choose_backend(cfg["n_sat"], params, cfg["backend"])
    init = new_product_state(cfg["n_sat"], cfg["sat_axis"], cfg["central_axis"], backend)
    label = f"{cfg['sat_axis'].value}^{cfg['n_sat']} x {cfg['central_axis'].value}"
    traj = run_trajectory(params, init, cfg["periods"],
                          sample_half_periods=cfg["half_periods"],
                          initial_label=label)
    lines = ["period_index,time,m_sat,m_sat_per_spin,m_central,entropy,fidelity_to_initial"]
    for r in traj.records:
        lines.append(",".join([
            str(r.period_index), fmt(r.time), fmt(r.m_sat), fmt(r.m_sat_per_spin),
            fmt(r.m_central), fmt(r.entropy), fmt(r.fidelity_to_initial),
        ]))
    atomic_write_text(cfg["out"], "\n".join(lines) + "\n")
    write_json_sidecar(_sidecar(cfg["out"]), _jsonable(cfg),
                       {"backend_resolved": backend.value})
    return f"evolve: wrote {len(traj.records)} records to {cfg['out']}"


def cmd_sweep(cfg: dict) -> str:
    grid = SweepGrid(
        lambdas=cfg["lambda_range"], gs=cfg["g_range"], n_sat=cfg["n_sat"],
        quantity=cfg["quantity"], window=cfg["window"], n_periods=cfg["periods"],
        delta=cfg["delta"], backend=cfg["backend"],
    )
    sweep_grid(grid, workers=cfg["workers"])
    write_sweep_csv(grid, cfg["out"])
    write_json_sidecar(_sidecar(cfg["out"]), _jsonable(cfg),
                       {"cell_errors": grid.errors, "warning_count": len(grid.errors)})
    note = f" ({len(grid.errors)} cell warnings)" if grid.errors else ""
    return (f"sweep: {grid.quantity} on {grid.lambdas.size}x{grid.gs.size} grid "
            f"-> {cfg['out']}{note}")


def _qfi_csv(rows, path: str) -> None:
    lines = ["lambda,g,n_periods,n_sat,F_ll,F_gg,F_lg,G,delta"]
    for q in rows:
        lines.append(",".join([
            fmt(q.lam), fmt(q.g), str(q.n_periods), str(q.n_sat),
            fmt(q.f_ll), fmt(q.f_gg), fmt(q.f_lg), fmt(q.g_value), fmt(q.delta),
        ]))
    atomic_write_text(path, "\n".join(lines) + "\n")


def cmd_qfi(cfg: dict) -> str:
    rows = qfi_over_periods(cfg["lam"], cfg["g"], cfg["periods"], cfg["n_sat"],
                            cfg["delta"], cfg["backend"])
    _qfi_csv(rows, cfg["out"])
    extra: dict = {"singular_points": sum(1 for q in rows if q.singular)}
    summary = f"qfi: {len(rows)} point(s) -> {cfg['out']}"
    if cfg["fit"]:
        if len(rows) < 4:
            raise ValueError("--fit needs at least 4 period counts, e.g. --periods 10..100")
        fit = scaling_fit([(q.n_periods, q.g_value) for q in rows])
        extra["fit"] = {
            "variable": "n_periods", "exponent": fit.exponent,
            "prefactor": fit.prefactor, "r_squared": fit.r_squared,
            "reliable": fit.reliable,
        }
        summary += f"; G ~ n^{fit.exponent:.3f} (r^2={fit.r_squared:.4f})"
    write_json_sidecar(_sidecar(cfg["out"]), _jsonable(cfg), extra)
    return summary


def cmd_qfi_scan(cfg: dict) -> str:
    points = qfi_lambda_scan(cfg["lambda_range"], cfg["g"], cfg["periods"],
                             cfg["n_sat"], cfg["delta"], cfg["backend"])
    lines = ["lambda,g,n_periods,n_sat,F_ll,F_gg,F_lg,G,delta,z_bar,regime"]
    for p in points:
        lines.append(",".join([
            fmt(p.lam), fmt(cfg["g"]), str(cfg["periods"]), str(cfg["n_sat"]),
            fmt(p.f_ll), fmt(p.f_gg), fmt(p.f_lg), fmt(p.g_value), fmt(cfg["delta"]),
            fmt(p.z_bar), p.regime,
        ]))
    atomic_write_text(cfg["out"], "\n".join(lines) + "\n")
    write_json_sidecar(_sidecar(cfg["out"]), _jsonable(cfg))
    n_dtc = sum(1 for p in points if p.regime == "ho-dtc")
    return f"qfi-scan: {len(points)} points ({n_dtc} in the slow-cycle regime) -> {cfg['out']}"


def cmd_scaling(cfg: dict) -> str:
    if cfg["mode"] == "sizes":
        n_fixed = cfg["periods"][-1]
        pairs = []
        for size in cfg["sizes"]:
            q = qfi_over_periods(cfg["lam"], cfg["g"], [n_fixed], size,
                                 cfg["delta"], cfg["backend"])[0]
            pairs.append((size, q.g_value))
        variable = "n_sat"
    elif cfg["mode"] == "periods":
        rows = qfi_over_periods(cfg["lam"], cfg["g"], cfg["periods"], cfg["n_sat"],
                                cfg["delta"], cfg["backend"])
        pairs = [(q.n_periods, q.g_value) for q in rows]
        variable = "n_periods"
    else:
        raise ValueError("mode must be 'sizes' or 'periods'")
    fit = scaling_fit(pairs)
    lines = [f"{variable},G"] + [f"{s},{fmt(v)}" for s, v in pairs]
    atomic_write_text(cfg["out"], "\n".join(lines) + "\n")
    write_json_sidecar(_sidecar(cfg["out"]), _jsonable(cfg), {
        "fit": {"variable": variable, "exponent": fit.exponent,
                "prefactor": fit.prefactor, "r_squared": fit.r_squared,
                "reliable": fit.reliable},
    })
    return (f"scaling: G ~ {variable}^{fit.exponent:.3f} "
            f"(r^2={fit.r_squared:.4f}) -> {cfg['out']}")


def cmd_oracle_check(cfg: dict) -> str:
    rows = oracle_check(cfg["n_sat"], cfg["backend"], cfg["tol"])
    lines = ["n_sat,class,time,fidelity,pass"]
    for r in rows:
        lines.append(f"{r.n_sat},{r.n_sat_class},{fmt(r.time)},{fmt(r.fidelity)},"
                     f"{'pass' if r.passed else 'FAIL'}")
    atomic_write_text(cfg["out"], "\n".join(lines) + "\n")
    failed = sum(1 for r in rows if not r.passed)
    write_json_sidecar(_sidecar(cfg["out"]), _jsonable(cfg),
                       {"checks": len(rows), "failed": failed})
    status = "all passed" if failed == 0 else f"{failed} FAILED"
    return f"oracle-check: {len(rows)} checks, {status} -> {cfg['out']}"


HANDLERS = {
    "evolve": cmd_evolve,
    "sweep": cmd_sweep,
    "qfi": cmd_qfi,
    "qfi-scan": cmd_qfi_scan,
    "scaling": cmd_scaling,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args.command, args)
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        summary = HANDLERS[args.command](cfg)
    except Exception as exc:  # runtime failure: machine-readable record
        record = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        print(json.dumps(record), file=sys.stderr)
        return 1
    print(summary)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
