"""CLI contract: config handling, CSV schemas, determinism, exit codes.

Commands run in-process through main(argv); one subprocess case covers the
stderr/exit-code contract end to end.
"""

import filecmp
import json
import subprocess
import sys

import pytest

from drivendicke.cli import DEFAULTS, config_hash, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# config sha256: ")
    sha = lines[0].split(": ")[1]
    assert len(sha) == 64
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    return sha, header, rows


def test_stability_schema_and_row_order(tmp_path, capsys):
    out = tmp_path / "map.csv"
    code, summary = run(
        capsys,
        "stability",
        "--output", str(out),
        "--set", "grid.nx=12",
        "--set", "grid.ny=8",
        "--set", "numerics.steps_per_period=300",
    )
    assert code == 0
    sha, header, rows = read_csv(out)
    assert header == ["g", "omega", "stable_plus", "stable_minus", "stable"]
    assert len(rows) == 12 * 8
    assert summary["config_sha256"] == sha
    assert 0.0 <= summary["unstable_fraction"] <= 1.0
    assert "unstable_g_intervals_at_mid_omega" in summary
    # omega is the outer loop: the first nx rows share omega, g ascends
    first_block = rows[:12]
    assert len({r[1] for r in first_block}) == 1
    gs = [float(r[0]) for r in first_block]
    assert gs == sorted(gs)
    assert {v for r in rows for v in r[2:]} <= {"0", "1"}


def test_identical_configs_give_identical_bytes(tmp_path, capsys):
    args = ["--set", "grid.nx=9", "--set", "grid.ny=5", "--set", "numerics.steps_per_period=300"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "stability", "--output", str(a), *args)[0] == 0
    assert run(capsys, "stability", "--output", str(b), *args)[0] == 0
    # the hash excludes the output path, so even the header line agrees
    assert filecmp.cmp(a, b, shallow=False)


def test_config_file_and_set_precedence(tmp_path, capsys):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"grid": {"nx": 7, "ny": 4}, "numerics": {"steps_per_period": 300}}))
    out = tmp_path / "map.csv"
    code, summary = run(
        capsys, "stability", "--config", str(cfg_file), "--output", str(out),
        "--set", "grid.nx=5",
    )
    assert code == 0
    _, _, rows = read_csv(out)
    assert len(rows) == 5 * 4  # --set wins over the file

    expected = json.loads(json.dumps(DEFAULTS["stability"]))
    expected["grid"]["nx"] = 5
    expected["grid"]["ny"] = 4
    expected["numerics"]["steps_per_period"] = 300
    expected["output"] = str(out)
    assert summary["config_sha256"] == config_hash(expected)


@pytest.mark.parametrize(
    "argv",
    [
        ("stability", "--set", "grid.bogus=1"),
        ("stability", "--set", "no_equals_sign"),
        ("stability", "--set", "params.omega=0"),
        ("spectrum", "--set", "numerics.n_eigs=2"),
        ("critical-lines", "--set", "numerics.n_dg=1"),
    ],
)
def test_config_errors_exit_2(tmp_path, capsys, argv):
    cmd = list(argv) + ["--output", str(tmp_path / "x.csv")]
    assert main(cmd) == 2
    capsys.readouterr()


def test_unreadable_config_exits_2(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert main(["stability", "--config", str(missing)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["stability", "--config", str(bad)]) == 2
    capsys.readouterr()


def test_numerical_failure_exits_3_with_json_on_stderr(tmp_path):
    # 16 RK4 steps per period cannot hold the Wronskian at omega ~ 1.6
    proc = subprocess.run(
        [
            sys.executable, "-m", "drivendicke.cli", "stability",
            "--output", str(tmp_path / "x.csv"),
            "--set", "grid.nx=6", "--set", "grid.ny=4",
            "--set", "numerics.steps_per_period=16",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3
    err = json.loads(proc.stderr)
    assert err["error"]["type"] == "NonConvergence"
    assert "Wronskian" in err["error"]["message"]


def test_section_writes_numbered_siblings(tmp_path, capsys):
    out = tmp_path / "cut.csv"
    args = ["--set", "numerics.n_y=31", "--set", "numerics.n_x=61"]
    code, summary = run(
        capsys, "section", "--output", str(out),
        "--set", "numerics.dg_values=[1.0,2.5]", *args,
    )
    assert code == 0
    assert summary["output"] == [str(tmp_path / "cut_1.csv"), str(tmp_path / "cut_2.csv")]
    for path in summary["output"]:
        _, header, rows = read_csv(tmp_path / path.split("/")[-1])
        assert header == ["Y", "X_of_Y", "E"]
        assert len(rows) == 31
    code, summary = run(
        capsys, "section", "--output", str(out),
        "--set", "numerics.dg_values=[1.0]", *args,
    )
    assert code == 0
    assert summary["output"] == [str(out)]


def test_spectrum_schema(tmp_path, capsys):
    out = tmp_path / "spectrum.csv"
    code, summary = run(
        capsys, "spectrum", "--output", str(out),
        "--set", "numerics.n_atoms=2",
        "--set", "numerics.n_max=10",
        "--set", "numerics.g_values=[0.01,0.02]",
    )
    assert code == 0
    _, header, rows = read_csv(out)
    assert header == ["k", "g", "dg", "N", "n_max", "e0", "e1", "e2", "order_field", "order_atom"]
    assert len(rows) == 2
    assert all(r[4] == "18" for r in rows)  # written cutoff includes the probe
    assert float(rows[0][5]) <= float(rows[0][6]) <= float(rows[0][7])
    assert summary["max_cutoff_defect"] >= 0.0


def test_critical_lines_row_count_matches_summary(tmp_path, capsys):
    out = tmp_path / "lines.csv"
    code, summary = run(
        capsys, "critical-lines", "--output", str(out),
        "--set", "numerics.n_dg=5",
        "--set", "numerics.dg_min=0.0",
        "--set", "numerics.dg_max=2.0",
    )
    assert code == 0
    _, header, rows = read_csv(out)
    assert header == ["k", "dg", "g"]
    assert len(rows) == summary["n_rows"]
    # the k = 0 line is g = omega/2 + omega (dg/Omega)^2 with omega = 0.05
    for r in rows:
        if r[0] == "0":
            dg = float(r[1])
            assert float(r[2]) == pytest.approx(0.025 + 0.05 * dg * dg, abs=1e-12)


def test_verify_report_and_failure_exit(tmp_path, capsys):
    out = tmp_path / "report.json"
    small = [
        "--set", "numerics.n_max=10",
        "--set", "numerics.n_slices=512",
        "--set", "numerics.n_low=3",
    ]
    code, report = run(capsys, "verify", "--output", str(out), *small)
    assert code == 0
    assert report["pass"] is True
    assert [c["name"] for c in report["checks"]] == [
        "undriven_average_exact",
        "rwa_average_k0_interior",
        "floquet_mode_fidelity",
    ]
    assert all(c["pass"] for c in report["checks"])
    assert report["unitarity_defect"] < 1e-8
    on_disk = json.loads(out.read_text())
    assert on_disk == report

    # an unreachable fidelity bar must flip the exit code, not raise
    code, report = run(capsys, "verify", "--set", "numerics.fidelity_min=1.1", *small)
    assert code == 3
    assert report["pass"] is False


def test_threads_flag_accepted(tmp_path, capsys):
    code, _ = run(
        capsys, "stability", "--threads", "1",
        "--output", str(tmp_path / "t.csv"),
        "--set", "grid.nx=4", "--set", "grid.ny=3",
        "--set", "numerics.steps_per_period=300",
    )
    assert code == 0
