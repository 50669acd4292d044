"""Command-line front end: every sweep and check as a subcommand.

Configuration is a JSON file selected with --config; --set key=value flags
override individual entries (dotted paths, JSON-literal values), and
--output overrides the output path.  The params block is expressed in units
of Omega: absolute frequencies are ratio * Omega.

Every CSV artifact starts with a comment line carrying the sha256 of the
effective config (excluding the output path, so renaming the target does not
change the payload bytes).  Floats are written with repr, i.e. the shortest
round-trip representation; iteration orders are fixed.  Identical configs
therefore produce byte-identical files.

Exit codes: 0 ok, 2 config error, 3 numerical failure.  Failures are
reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import copy
import hashlib
import json
import os
import sys

import numpy as np

from . import accel
from .core import GridSpec, ModelParams
from .errors import ConfigError, DickeError

_STABILITY_GRID = {
    "x_min": 0.0, "x_max": 0.8, "nx": 200,
    "y_min": 0.02, "y_max": 1.6, "ny": 200,
}
_PHASE_GRID = {
    "x_min": 0.01, "x_max": 0.2, "nx": 40,
    "y_min": 0.0, "y_max": 3.5, "ny": 40,
}
_PARAMS = {"omega": 0.05, "omega0": 0.05, "g": 0.0975, "dg": 0.15, "Omega": 1.0}

DEFAULTS: dict[str, dict] = {
    "stability": {
        "params": dict(_PARAMS),
        "grid": dict(_STABILITY_GRID),
        "numerics": {"steps_per_period": 2000},
        "output": "stability.csv",
    },
    "phase-diagram": {
        "params": dict(_PARAMS),
        "grid": dict(_PHASE_GRID),
        "numerics": {
            "check_seeds": False,
            "locate_first_order": True,
            "seed_nx": 41,
            "seed_ny": 41,
            "seed_x_max": 3.0,
        },
        "output": "phases.csv",
    },
    "section": {
        "params": dict(_PARAMS),
        "numerics": {"dg_values": [], "n_y": 401, "n_x": 601, "x_window": 3.0},
        "output": "section.csv",
    },
    "spectrum": {
        "params": dict(_PARAMS),
        "numerics": {
            "k": 0,
            "variant": "full",
            "n_atoms": 8,
            "n_max": 0,
            "n_eigs": 3,
            "g_values": [0.01, 0.02, 0.03],
        },
        "output": "spectrum.csv",
    },
    "verify": {
        "params": {"omega": 0.05, "omega0": 0.05, "g": 0.01, "dg": 0.15, "Omega": 1.0},
        "numerics": {
            "n_atoms": 4,
            "n_max": 20,
            "n_low": 5,
            "n_slices": 4096,
            "interior_margin": 8,
            "tol_rwa": 1e-6,
            "tol_exact": 1e-12,
            "fidelity_min": 0.99,
            "compare_out_of_window": False,
        },
        "output": "",
    },
    "critical-lines": {
        "params": dict(_PARAMS),
        "numerics": {"k_values": [0, 1, 2], "dg_min": 0.0, "dg_max": 0.5, "n_dg": 101},
        "output": "critical_lines.csv",
    },
}


def _merge(base: dict, incoming: dict, path: str = "") -> None:
    for key, value in incoming.items():
        here = f"{path}{key}"
        if key not in base:
            raise ConfigError(f"unknown config key {here!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config key {here!r} expects a mapping")
            _merge(base[key], value, here + ".")
        else:
            base[key] = value


def _apply_set(cfg: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"--set expects key=value, got {assignment!r}")
    dotted, raw = assignment.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    node = cfg
    parts = dotted.split(".")
    for part in parts[:-1]:
        if part not in node or not isinstance(node[part], dict):
            raise ConfigError(f"unknown config key {dotted!r}")
        node = node[part]
    if parts[-1] not in node:
        raise ConfigError(f"unknown config key {dotted!r}")
    if isinstance(node[parts[-1]], dict):
        raise ConfigError(f"config key {dotted!r} is a section, not a value")
    node[parts[-1]] = value


def load_config(subcommand: str, args: argparse.Namespace) -> dict:
    cfg = copy.deepcopy(DEFAULTS[subcommand])
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        _merge(cfg, file_cfg)
    for assignment in args.set or []:
        _apply_set(cfg, assignment)
    if args.output is not None:
        cfg["output"] = args.output
    return cfg


def config_hash(cfg: dict) -> str:
    hashed = {k: v for k, v in cfg.items() if k != "output"}
    blob = json.dumps(hashed, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def model_params(cfg: dict) -> ModelParams:
    p = cfg["params"]
    Om = p["Omega"]
    return ModelParams(
        omega=p["omega"] * Om,
        omega0=p["omega0"] * Om,
        g=p["g"] * Om,
        dg=p["dg"] * Om,
        Omega=Om,
    )


def grid_spec(cfg: dict) -> GridSpec:
    g = cfg["grid"]
    return GridSpec(
        x_min=g["x_min"], x_max=g["x_max"], nx=g["nx"],
        y_min=g["y_min"], y_max=g["y_max"], ny=g["ny"],
    )


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: str, header: list[str], rows, cfg_sha: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# config sha256: {cfg_sha}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _emit(summary: dict) -> None:
    print(json.dumps(summary, sort_keys=True))


def _sibling(path: str, tag: str) -> str:
    base, ext = os.path.splitext(path)
    return f"{base}_{tag}{ext or '.csv'}"


def cmd_stability(cfg: dict) -> int:
    from .mathieu import stability_map

    params = model_params(cfg)
    grid = grid_spec(cfg)
    smap = stability_map(params, grid, steps_per_period=cfg["numerics"]["steps_per_period"])
    sha = config_hash(cfg)
    rows = []
    for j in range(grid.ny):
        for i in range(grid.nx):
            rows.append(
                (
                    smap.g_values[i],
                    smap.omega_values[j],
                    smap.stable_plus[i, j],
                    smap.stable_minus[i, j],
                    smap.stable[i, j],
                )
            )
    write_csv(cfg["output"], ["g", "omega", "stable_plus", "stable_minus", "stable"], rows, sha)
    mid = grid.ny // 2
    col = smap.stable[:, mid]
    intervals = []
    start = None
    for i, ok in enumerate(col):
        if not ok and start is None:
            start = i
        elif ok and start is not None:
            intervals.append([float(smap.g_values[start]), float(smap.g_values[i - 1])])
            start = None
    if start is not None:
        intervals.append([float(smap.g_values[start]), float(smap.g_values[-1])])
    _emit(
        {
            "subcommand": "stability",
            "config_sha256": sha,
            "output": cfg["output"],
            "unstable_fraction": smap.unstable_fraction,
            "unstable_g_intervals_at_mid_omega": {
                "omega": float(smap.omega_values[mid]),
                "intervals": intervals,
            },
        }
    )
    return 0


def cmd_phase_diagram(cfg: dict) -> int:
    from .landscape import default_seed_grid, phase_diagram

    params = model_params(cfg)
    grid = grid_spec(cfg)
    num = cfg["numerics"]
    seeds = default_seed_grid(nx=num["seed_nx"], ny=num["seed_ny"], x_max=num["seed_x_max"])
    diagram = phase_diagram(
        params,
        grid,
        seed_grid=seeds,
        check_seeds=num["check_seeds"],
        locate_first_order=num["locate_first_order"],
    )
    sha = config_hash(cfg)
    rows = []
    counts: dict[str, int] = {}
    for j in range(grid.ny):
        for i in range(grid.nx):
            kind = diagram.kind[i, j]
            counts[kind] = counts.get(kind, 0) + 1
            rows.append(
                (
                    diagram.g_values[i],
                    diagram.dg_values[j],
                    kind,
                    diagram.n_local[i, j],
                    diagram.n_global[i, j],
                    diagram.global_at_origin[i, j],
                )
            )
    write_csv(
        cfg["output"],
        ["g", "dg", "kind", "n_local", "n_global", "global_at_origin"],
        rows,
        sha,
    )
    files = {"zones": cfg["output"]}
    second = _sibling(cfg["output"], "second_order")
    write_csv(
        second,
        ["dg", "g"],
        [(diagram.dg_values[j], diagram.second_order[j]) for j in range(grid.ny)],
        sha,
    )
    files["second_order"] = second
    if num["locate_first_order"]:
        first = _sibling(cfg["output"], "first_order")
        write_csv(first, ["g", "dg_star"], [tuple(r) for r in diagram.first_order], sha)
        files["first_order"] = first
    _emit(
        {
            "subcommand": "phase-diagram",
            "config_sha256": sha,
            "output": files,
            "zone_cells": counts,
        }
    )
    return 0


def cmd_section(cfg: dict) -> int:
    from .landscape import section

    params = model_params(cfg)
    num = cfg["numerics"]
    dg_values = [v * params.Omega for v in num["dg_values"]] or [params.dg]
    sha = config_hash(cfg)
    outputs = []
    for idx, dgv in enumerate(dg_values):
        ys, xs, es = section(
            params.replace(dg=float(dgv)),
            n_y=num["n_y"],
            x_window=num["x_window"],
            n_x=num["n_x"],
        )
        path = cfg["output"] if len(dg_values) == 1 else _sibling(cfg["output"], str(idx + 1))
        write_csv(path, ["Y", "X_of_Y", "E"], zip(ys, xs, es), sha)
        outputs.append(path)
    _emit(
        {
            "subcommand": "section",
            "config_sha256": sha,
            "output": outputs,
            "dg_values": [float(v) for v in dg_values],
        }
    )
    return 0


def cmd_spectrum(cfg: dict) -> int:
    from .effective import CUTOFF_PROBE, converged_spectrum, default_n_max

    params = model_params(cfg)
    num = cfg["numerics"]
    if num["n_eigs"] < 3:
        raise ConfigError("spectrum CSV reports e0,e1,e2; n_eigs must be >= 3")
    sha = config_hash(cfg)
    rows = []
    worst_defect = 0.0
    for g_ratio in num["g_values"]:
        p = params.replace(g=float(g_ratio) * params.Omega)
        base_n_max = num["n_max"] or default_n_max(p, num["n_atoms"])
        res, defect = converged_spectrum(
            num["k"],
            p,
            num["n_atoms"],
            n_eigs=num["n_eigs"],
            n_max=base_n_max,
            variant=num["variant"],
        )
        worst_defect = max(worst_defect, defect)
        rows.append(
            (
                num["k"],
                p.g,
                p.dg,
                num["n_atoms"],
                base_n_max + CUTOFF_PROBE,
                res.eigenvalues[0],
                res.eigenvalues[1],
                res.eigenvalues[2],
                res.order_field,
                res.order_atom,
            )
        )
    write_csv(
        cfg["output"],
        ["k", "g", "dg", "N", "n_max", "e0", "e1", "e2", "order_field", "order_atom"],
        rows,
        sha,
    )
    _emit(
        {
            "subcommand": "spectrum",
            "config_sha256": sha,
            "output": cfg["output"],
            "max_cutoff_defect": worst_defect,
        }
    )
    return 0


def cmd_verify(cfg: dict) -> int:
    from .effective import QuantumBasis, build_h0
    from .floquet import DriveConfig, propagate_period, rotating_frame_average, rwa_crosscheck

    params = model_params(cfg)
    num = cfg["numerics"]
    basis = QuantumBasis(n_atoms=num["n_atoms"], n_max=num["n_max"])
    spin_dim = num["n_atoms"] + 1
    cut = (num["n_max"] + 1 - num["interior_margin"]) * spin_dim
    checks = []

    p_static = params.replace(dg=0.0)
    avg0 = rotating_frame_average(DriveConfig(params=p_static), 0, basis)
    exact_err = float(np.abs(avg0 - build_h0(0, p_static, basis, "full")).max())
    checks.append(
        {
            "name": "undriven_average_exact",
            "residual": exact_err,
            "tol": num["tol_exact"],
            "pass": exact_err < num["tol_exact"],
        }
    )

    avg = rotating_frame_average(DriveConfig(params=params), 0, basis)
    h0 = build_h0(0, params, basis, "full")
    interior_err = float(np.abs((avg - h0)[:cut, :cut]).max())
    checks.append(
        {
            "name": "rwa_average_k0_interior",
            "residual": interior_err,
            "tol": num["tol_rwa"],
            "pass": interior_err < num["tol_rwa"],
        }
    )

    floq = propagate_period(DriveConfig(params=params), basis, n_slices=num["n_slices"])
    rep = rwa_crosscheck(
        DriveConfig(params=params), 0, basis, n_low=num["n_low"], floquet_result=floq
    )
    checks.append(
        {
            "name": "floquet_mode_fidelity",
            "min_fidelity": float(rep.fidelities.min()),
            "mean_fidelity": float(rep.fidelities.mean()),
            "tol": num["fidelity_min"],
            "pass": bool(rep.fidelities.min() >= num["fidelity_min"]),
        }
    )

    report = {
        "subcommand": "verify",
        "config_sha256": config_hash(cfg),
        "checks": checks,
        "unitarity_defect": floq.unitarity_defect,
    }
    if num["compare_out_of_window"]:
        p_out = params.replace(g=0.5 * params.Omega)
        rep_out = rwa_crosscheck(DriveConfig(params=p_out), 0, basis, n_low=num["n_low"], n_slices=num["n_slices"])
        report["out_of_window"] = {
            "g": p_out.g,
            "mean_fidelity": float(rep_out.fidelities.mean()),
        }
    ok = all(c["pass"] for c in checks)
    report["pass"] = ok
    if cfg["output"]:
        with open(cfg["output"], "w", newline="\n") as fh:
            json.dump(report, fh, sort_keys=True, indent=2)
            fh.write("\n")
    _emit(report)
    return 0 if ok else 3


def cmd_critical_lines(cfg: dict) -> int:
    from .effective import critical_line

    params = model_params(cfg)
    num = cfg["numerics"]
    if num["n_dg"] < 2:
        raise ConfigError("n_dg must be >= 2")
    dgs = np.linspace(num["dg_min"], num["dg_max"], num["n_dg"]) * params.Omega
    sha = config_hash(cfg)
    rows = []
    for k in num["k_values"]:
        for dgv in dgs:
            for g in critical_line(int(k), params.replace(dg=float(dgv))):
                rows.append((int(k), float(dgv), g))
    write_csv(cfg["output"], ["k", "dg", "g"], rows, sha)
    _emit(
        {
            "subcommand": "critical-lines",
            "config_sha256": sha,
            "output": cfg["output"],
            "n_rows": len(rows),
        }
    )
    return 0


_HANDLERS = {
    "stability": cmd_stability,
    "phase-diagram": cmd_phase_diagram,
    "section": cmd_section,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "critical-lines": cmd_critical_lines,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driven-dicke",
        description="Stability, phase-structure and RWA-verification sweeps for the driven Dicke model.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--output", help="output path (overrides config)")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override one config entry (dotted path, JSON value)",
        )
        p.add_argument("--threads", type=int, help="numba thread count")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        accel.set_threads(args.threads)
        cfg = load_config(args.subcommand, args)
        return _HANDLERS[args.subcommand](cfg)
    except ConfigError as exc:
        json.dump({"error": {"type": type(exc).__name__, "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    except DickeError as exc:
        json.dump({"error": {"type": type(exc).__name__, "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
