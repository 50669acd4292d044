import numpy as np
import pytest

FAKE_SHA = "ab" * 32


def write_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# config sha256: {FAKE_SHA}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return str(path)


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


@pytest.fixture
def stability_csv(tmp_path):
    gs = np.linspace(0.0, 0.8, 9)
    oms = np.linspace(0.1, 1.3, 7)
    rows = []
    for om in oms:
        for g in gs:
            stable = g < om / 2
            rows.append((g, om, stable, stable, stable))
    return write_csv(
        tmp_path / "map.csv",
        ["g", "omega", "stable_plus", "stable_minus", "stable"],
        rows,
    )


@pytest.fixture
def zones_csv(tmp_path):
    gs = np.linspace(0.01, 0.2, 8)
    dgs = np.linspace(0.0, 3.0, 6)
    rows = []
    for dg in dgs:
        for g in gs:
            if g < 0.05:
                rows.append((g, dg, "normal", 1, 1, True))
            elif g < 0.12:
                rows.append((g, dg, "multistable", 3, 2, False))
            else:
                rows.append((g, dg, "superradiant", 2, 2, False))
    path = write_csv(
        tmp_path / "phases.csv",
        ["g", "dg", "kind", "n_local", "n_global", "global_at_origin"],
        rows,
    )
    write_csv(
        tmp_path / "phases_second_order.csv",
        ["dg", "g"],
        [(dg, 0.025 + 0.05 * dg**2) for dg in dgs],
    )
    write_csv(
        tmp_path / "phases_first_order.csv",
        ["g", "dg_star"],
        [(g, 2.0 + g) for g in gs],
    )
    return path


@pytest.fixture
def section_csvs(tmp_path):
    ys = np.linspace(-1.2, 1.2, 21)
    paths = []
    for i in range(4):
        rows = [(y, 0.3 * y, (1 + i) * (y**4 - y**2)) for y in ys]
        paths.append(write_csv(tmp_path / f"cut_{i + 1}.csv", ["Y", "X_of_Y", "E"], rows))
    return paths
