"""CSV loading with strict schema checks.

The upstream CLI documents one header per subcommand and prefixes every file
with a ``# config sha256: <hex>`` comment.  Anything that deviates raises
:class:`SchemaMismatch` naming the offending column, so a figure built from
the wrong file (or a file from an older CLI) fails loudly instead of drawing
garbage.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

HASH_PREFIX = "# config sha256: "

ZONE_LABELS = ("normal", "superradiant", "multistable")

# column name -> cell parser, per table kind
_FLOAT = "float"
_BOOL = "bool"
_INT = "int"
_LABEL = "label"

SCHEMAS: dict[str, tuple[tuple[str, str], ...]] = {
    "stability": (
        ("g", _FLOAT),
        ("omega", _FLOAT),
        ("stable_plus", _BOOL),
        ("stable_minus", _BOOL),
        ("stable", _BOOL),
    ),
    "zones": (
        ("g", _FLOAT),
        ("dg", _FLOAT),
        ("kind", _LABEL),
        ("n_local", _INT),
        ("n_global", _INT),
        ("global_at_origin", _BOOL),
    ),
    "second_order": (("dg", _FLOAT), ("g", _FLOAT)),
    "first_order": (("g", _FLOAT), ("dg_star", _FLOAT)),
    "section": (("Y", _FLOAT), ("X_of_Y", _FLOAT), ("E", _FLOAT)),
}


class SchemaMismatch(ValueError):
    """Input CSV does not match the emitting subcommand's schema."""


@dataclass(frozen=True)
class Table:
    kind: str
    path: str
    config_sha: str
    columns: dict[str, np.ndarray]

    @property
    def n_rows(self) -> int:
        first = next(iter(self.columns.values()))
        return len(first)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]


def _parse_cell(raw: str, typ: str, kind: str, name: str, line_no: int):
    if typ == _BOOL:
        if raw == "0":
            return False
        if raw == "1":
            return True
        raise SchemaMismatch(
            f"{kind} CSV, line {line_no}, column {name!r}: want 0 or 1, got {raw!r}"
        )
    if typ == _LABEL:
        if raw not in ZONE_LABELS:
            raise SchemaMismatch(
                f"{kind} CSV, line {line_no}, column {name!r}: "
                f"unknown zone label {raw!r}"
            )
        return raw
    try:
        return int(raw) if typ == _INT else float(raw)
    except ValueError:
        raise SchemaMismatch(
            f"{kind} CSV, line {line_no}, column {name!r}: "
            f"cannot parse {raw!r} as {typ}"
        ) from None


def load_table(path: str, kind: str) -> Table:
    if kind not in SCHEMAS:
        raise ValueError(f"unknown table kind {kind!r}, know {sorted(SCHEMAS)}")
    schema = SCHEMAS[kind]
    names = [n for n, _ in schema]
    with open(path, newline="") as fh:
        first = fh.readline().rstrip("\n")
        if not first.startswith(HASH_PREFIX):
            raise SchemaMismatch(
                f"{kind} CSV {path}: missing '{HASH_PREFIX.strip()}' comment line"
            )
        sha = first[len(HASH_PREFIX):]
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(f"{kind} CSV {path}: no header line") from None
        for i, want in enumerate(names):
            if i >= len(header):
                raise SchemaMismatch(
                    f"{kind} CSV {path}: column {i + 1} {want!r} missing "
                    f"(header has {len(header)} columns)"
                )
            if header[i] != want:
                raise SchemaMismatch(
                    f"{kind} CSV {path}: column {i + 1} is {header[i]!r}, "
                    f"expected {want!r}"
                )
        if len(header) > len(names):
            raise SchemaMismatch(
                f"{kind} CSV {path}: unexpected extra column {header[len(names)]!r}"
            )
        cells: list[list] = [[] for _ in schema]
        for line_no, row in enumerate(reader, start=3):
            if len(row) != len(schema):
                raise SchemaMismatch(
                    f"{kind} CSV {path}: line {line_no} has {len(row)} cells, "
                    f"expected {len(schema)}"
                )
            for store, raw, (name, typ) in zip(cells, row, schema):
                store.append(_parse_cell(raw, typ, kind, name, line_no))
    if not cells[0]:
        raise SchemaMismatch(f"{kind} CSV {path}: no data rows")
    columns = {}
    for (name, typ), store in zip(schema, cells):
        if typ == _LABEL:
            columns[name] = np.array(store, dtype=object)
        else:
            columns[name] = np.array(store)
    return Table(kind=kind, path=path, config_sha=sha, columns=columns)


def raster_axes(table: Table, x: str, y: str) -> tuple[np.ndarray, np.ndarray]:
    """Recover the sorted unique grid vectors of a rasterized table."""
    xs = np.unique(table[x])
    ys = np.unique(table[y])
    if len(xs) * len(ys) != table.n_rows:
        raise SchemaMismatch(
            f"{table.kind} CSV {table.path}: {table.n_rows} rows do not tile a "
            f"{len(xs)} x {len(ys)} grid in ({x}, {y})"
        )
    return xs, ys


def raster_grid(table: Table, x: str, y: str, value: str) -> np.ndarray:
    """Reshape a column onto the (ny, nx) grid implied by two axis columns.

    The CLI writes rasters with x varying fastest; verified here rather than
    assumed, since a hand-edited file can break it silently.
    """
    xs, ys = raster_axes(table, x, y)
    nx, ny = len(xs), len(ys)
    xi = np.searchsorted(xs, table[x])
    yi = np.searchsorted(ys, table[y])
    seen = np.zeros((ny, nx), dtype=bool)
    seen[yi, xi] = True
    if not seen.all():
        raise SchemaMismatch(
            f"{table.kind} CSV {table.path}: ({x}, {y}) pairs do not cover the grid"
        )
    col = table[value]
    grid = np.empty((ny, nx), dtype=col.dtype)
    grid[yi, xi] = col
    return grid
