"""Figure builders for the driven-dicke CSV artifacts.

Three figure kinds, matching the three sweep families the CLI emits:

- ``stability``: bool raster over (g, omega) with the static separatrix and
  the k = 1, 2, 3 parametric-resonance curves as dotted reference lines,
- ``zones``: phase-zone raster over (g, dg) with the analytic second-order
  boundary (dotted red) and the bisected first-order boundary (solid blue)
  read from the sibling CSVs the phase-diagram subcommand writes,
- ``sections``: one panel per landscape-section CSV, energy along the
  per-Y minimizing X.

No physics is recomputed here.  The reference curves on the stability
figure are parameter-free once both axes are expressed in units of the
drive frequency (g/Omega = |k^2/4 - u^2| / 2u at u = omega/Omega, and the
static line g = omega/2), so drawing them needs no model input; everything
else comes out of the CSV files.

Figures are rendered straight to an Agg canvas, never through pyplot, and
PNG metadata is stripped, so the same inputs give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure

from .schema import SchemaMismatch, Table, load_table, raster_axes, raster_grid

KINDS = ("stability", "zones", "sections")

_STABILITY_COLORS = ListedColormap(["#2c4a6e", "#f2f2ef"])  # unstable, stable
_ZONE_COLORS = ListedColormap(["#f4f1ea", "#f3c98b", "#a8c6dd"])
_ZONE_ORDER = ("normal", "superradiant", "multistable")


@dataclass(frozen=True)
class FigureRecipe:
    kind: str
    inputs: tuple[str, ...]
    output: str
    drive_freq: float = 1.0  # Omega in the units the CSVs were written in
    overlays: bool = True
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}, know {KINDS}")
        if not self.inputs:
            raise ValueError("recipe needs at least one input CSV")
        if self.drive_freq <= 0:
            raise ValueError("drive_freq must be positive")
        ext = os.path.splitext(self.output)[1].lower()
        if ext != ".png":
            raise ValueError(f"only .png output is byte-deterministic, got {ext!r}")


def _sibling(path: str, tag: str) -> str:
    base, ext = os.path.splitext(path)
    return f"{base}_{tag}{ext or '.csv'}"


def _extent(xs: np.ndarray, ys: np.ndarray, scale: float) -> tuple[float, float, float, float]:
    dx = (xs[1] - xs[0]) / 2 if len(xs) > 1 else 0.5
    dy = (ys[1] - ys[0]) / 2 if len(ys) > 1 else 0.5
    return (
        (xs[0] - dx) / scale,
        (xs[-1] + dx) / scale,
        (ys[0] - dy) / scale,
        (ys[-1] + dy) / scale,
    )


def _stability_figure(recipe: FigureRecipe) -> tuple[Figure, dict]:
    if len(recipe.inputs) != 1:
        raise ValueError("stability takes exactly one input CSV")
    table = load_table(recipe.inputs[0], "stability")
    gs, oms = raster_axes(table, "g", "omega")
    stable = raster_grid(table, "g", "omega", "stable").astype(bool)
    Om = recipe.drive_freq

    fig = Figure(figsize=(6.0, 4.5))
    ax = fig.subplots()
    ext = _extent(gs, oms, Om)
    ax.imshow(
        stable,
        origin="lower",
        extent=ext,
        aspect="auto",
        cmap=_STABILITY_COLORS,
        vmin=0,
        vmax=1,
        interpolation="nearest",
    )
    overlays = []
    if recipe.overlays:
        u = np.linspace(max(ext[2], 1e-3), ext[3], 600)
        ax.plot(u / 2, u, color="#cc2222", ls=":", lw=1.4)
        overlays.append("separatrix")
        for k in (1, 2, 3):
            gk = np.abs(k * k / 4.0 - u * u) / (2 * u)
            gk = np.ma.masked_outside(gk, ext[0], ext[1])
            ax.plot(gk, u, color="black", ls=":", lw=1.1)
            overlays.append(f"resonance_k{k}")
    ax.set_xlim(ext[0], ext[1])
    ax.set_ylim(ext[2], ext[3])
    ax.set_xlabel(r"$g\,/\,\Omega$")
    ax.set_ylabel(r"$\omega\,/\,\Omega$")
    summary = {
        "kind": "stability",
        "raster": [len(oms), len(gs)],
        "unstable_fraction": float(1.0 - stable.mean()),
        "overlays": overlays,
        "config_sha256": table.config_sha,
    }
    return fig, summary


def _load_optional(path: str, kind: str) -> Table | None:
    if not os.path.exists(path):
        return None
    return load_table(path, kind)


def _zones_figure(recipe: FigureRecipe) -> tuple[Figure, dict]:
    if len(recipe.inputs) not in (1, 2, 3):
        raise ValueError("zones takes the zone CSV plus up to two boundary CSVs")
    table = load_table(recipe.inputs[0], "zones")
    if len(recipe.inputs) >= 2:
        second = load_table(recipe.inputs[1], "second_order")
    else:
        second = _load_optional(_sibling(recipe.inputs[0], "second_order"), "second_order")
    if len(recipe.inputs) >= 3:
        first = load_table(recipe.inputs[2], "first_order")
    else:
        first = _load_optional(_sibling(recipe.inputs[0], "first_order"), "first_order")

    gs, dgs = raster_axes(table, "g", "dg")
    kind_grid = raster_grid(table, "g", "dg", "kind")
    idx = np.vectorize(_ZONE_ORDER.index, otypes=[np.int64])(kind_grid)
    Om = recipe.drive_freq

    fig = Figure(figsize=(6.0, 4.5))
    ax = fig.subplots()
    ext = _extent(gs, dgs, Om)
    ax.imshow(
        idx,
        origin="lower",
        extent=ext,
        aspect="auto",
        cmap=_ZONE_COLORS,
        vmin=-0.5,
        vmax=2.5,
        interpolation="nearest",
    )
    labels = []
    for name in _ZONE_ORDER:
        mask = kind_grid == name
        if not mask.any():
            continue
        jj, ii = np.nonzero(mask)
        ax.text(
            float(np.median(gs[ii])) / Om,
            float(np.median(dgs[jj])) / Om,
            name,
            ha="center",
            va="center",
            fontsize=9,
        )
        labels.append(name)
    overlays = []
    if recipe.overlays and second is not None:
        g2 = np.ma.masked_outside(second["g"] / Om, ext[0], ext[1])
        ax.plot(g2, second["dg"] / Om, color="#cc2222", ls=":", lw=1.6)
        overlays.append("second_order")
    if recipe.overlays and first is not None:
        ax.plot(first["g"] / Om, first["dg_star"] / Om, color="#2244cc", ls="-", lw=1.6)
        overlays.append("first_order")
    ax.set_xlim(ext[0], ext[1])
    ax.set_ylim(ext[2], ext[3])
    ax.set_xlabel(r"$g\,/\,\Omega$")
    ax.set_ylabel(r"$\Delta g\,/\,\Omega$")
    summary = {
        "kind": "zones",
        "raster": [len(dgs), len(gs)],
        "zone_labels": labels,
        "overlays": overlays,
        "config_sha256": table.config_sha,
    }
    return fig, summary


def _sections_figure(recipe: FigureRecipe) -> tuple[Figure, dict]:
    tables = [load_table(path, "section") for path in recipe.inputs]
    n = len(tables)
    ncols = 2 if n >= 3 else n
    nrows = (n + ncols - 1) // ncols
    Om = recipe.drive_freq

    fig = Figure(figsize=(3.0 * ncols, 2.4 * nrows))
    axes = fig.subplots(nrows, ncols, sharex=True, squeeze=False)
    for i, (table, ax) in enumerate(zip(tables, axes.flat)):
        ax.plot(table["Y"], table["E"] / Om, color="#2c4a6e", lw=1.2)
        ax.annotate(
            f"({chr(ord('a') + i)})",
            xy=(0.04, 0.90),
            xycoords="axes fraction",
            fontsize=9,
        )
    for ax in axes.flat[n:]:
        ax.set_axis_off()
    fig.supxlabel(r"$Y$")
    fig.supylabel(r"$E_G\,/\,\Omega$")
    summary = {
        "kind": "sections",
        "panels": n,
        "rows_per_panel": [t.n_rows for t in tables],
        "config_sha256": tables[0].config_sha,
    }
    return fig, summary


_BUILDERS = {
    "stability": _stability_figure,
    "zones": _zones_figure,
    "sections": _sections_figure,
}


def build_figure(recipe: FigureRecipe) -> tuple[Figure, dict]:
    return _BUILDERS[recipe.kind](recipe)


def render(recipe: FigureRecipe) -> dict:
    fig, summary = build_figure(recipe)
    # Software text chunk is the only non-pixel payload matplotlib writes
    # into PNGs; dropping it makes reruns byte-identical
    fig.savefig(recipe.output, dpi=recipe.dpi, metadata={"Software": None})
    summary["output"] = recipe.output
    summary["inputs"] = list(recipe.inputs)
    return summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render figures from driven-dicke CSV output.",
    )
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="inputs", required=True, nargs="+", metavar="CSV")
    parser.add_argument("--out", required=True, metavar="PNG")
    parser.add_argument(
        "--drive-freq",
        type=float,
        default=1.0,
        help="Omega in the CSV's units; axes are shown divided by it",
    )
    parser.add_argument("--no-overlays", action="store_true")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        recipe = FigureRecipe(
            kind=args.kind,
            inputs=tuple(args.inputs),
            output=args.out,
            drive_freq=args.drive_freq,
            overlays=not args.no_overlays,
            dpi=args.dpi,
        )
        summary = render(recipe)
    except SchemaMismatch as exc:
        json.dump({"error": {"type": "SchemaMismatch", "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return 3
    except (ValueError, OSError) as exc:
        json.dump({"error": {"type": type(exc).__name__, "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    print(json.dumps(summary, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
