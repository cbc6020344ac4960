"""End-to-end CLI behaviour through subprocesses: outputs, formats, exit codes."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from kirisheet import MEASUREMENT_HEADER, deformed_geometry, sheet_preset, tensile_force

SRC = Path(__file__).resolve().parent.parent / "src"


def run_cli(*args, cwd=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "kirisheet", *map(str, args)],
        capture_output=True, text=True, env=env, cwd=cwd,
    )


def write_synthetic_csv(path, spec, constants, deltas=(2.5, 5.0, 7.5, 10.0, 12.5)):
    lines = [",".join(MEASUREMENT_HEADER)]
    for d in deltas:
        state, layout = deformed_geometry(spec, d)
        force = tensile_force(state, constants)
        lines.append(f"{d},{state.ly},{layout.lz},{force}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def synthetic_csv(tmp_path_factory):
    spec = sheet_preset("E")
    from kirisheet import stiffness_preset

    path = tmp_path_factory.mktemp("data") / "sheet_e.csv"
    return write_synthetic_csv(path, spec, stiffness_preset("E"))


def test_deform_identity_row():
    result = run_cli("deform", "E", "--delta-x", "0", "--format", "csv")
    assert result.returncode == 0
    header, row = result.stdout.strip().splitlines()
    assert header == "delta_x_mm,lx_mm,ly_mm,lz_mm,theta_rad,delta_y_mm"
    cells = row.split(",")
    assert float(cells[2]) == 26.7
    assert float(cells[3]) == 0.0


def test_deform_accepts_spec_file(tmp_path, sheet_e):
    spec_path = tmp_path / "sheet_e.json"
    spec_path.write_text(json.dumps(sheet_e.to_dict()), encoding="utf-8")
    result = run_cli("deform", spec_path, "--delta-x", "5")
    assert result.returncode == 0
    assert "22.580744" in result.stdout


def test_deform_sweep_rows():
    result = run_cli("deform", "E", "--sweep", "2.5:12.5:2.5", "--format", "csv")
    assert result.returncode == 0
    rows = result.stdout.strip().splitlines()[1:]
    assert len(rows) == 5
    assert [float(r.split(",")[0]) for r in rows] == [2.5, 5.0, 7.5, 10.0, 12.5]


def test_deform_out_of_range_names_limit():
    result = run_cli("deform", "E", "--delta-x", "99")
    assert result.returncode == 2
    assert "max_displacement" in result.stderr


def test_deform_requires_displacement():
    result = run_cli("deform", "E")
    assert result.returncode == 2
    assert "delta-x" in result.stderr or "sweep" in result.stderr


def test_unknown_flag_rejected():
    result = run_cli("deform", "E", "--delta-x", "1", "--frobnicate")
    assert result.returncode == 2


def test_force_with_bundled_constants():
    result = run_cli("force", "E", "--constants", "E", "--delta-x", "0", "--format", "csv")
    assert result.returncode == 0
    assert result.stdout.strip().splitlines()[1] == "0.000000,0.000000"
    assert result.stderr == ""


def test_force_constants_mismatch_warns():
    result = run_cli("force", "E", "--constants", "A", "--delta-x", "5")
    assert result.returncode == 0
    assert "warning" in result.stderr.lower()


def test_force_constants_from_json(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps({"kx": 171.78, "ky": 9.25}), encoding="utf-8")
    result = run_cli("force", "E", "--constants", path, "--delta-x", "5", "--format", "csv")
    assert result.returncode == 0
    assert float(result.stdout.strip().splitlines()[1].split(",")[1]) == pytest.approx(
        0.897373, abs=1e-6
    )


def test_force_unknown_constants():
    result = run_cli("force", "E", "--constants", "Z", "--delta-x", "5")
    assert result.returncode == 2
    assert "Z" in result.stderr


def test_fit_recovers_constants_json(synthetic_csv):
    result = run_cli("fit", "E", synthetic_csv, "--format", "json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["kx_n_per_m"] == pytest.approx(171.78, rel=1e-6)
    assert payload["ky_n_per_m"] == pytest.approx(9.25, rel=1e-6)
    assert payload["mae_force_n"] <= 1e-9
    assert payload["mae_width_mm"] == pytest.approx(0.0, abs=1e-9)


def test_fit_text_summary(synthetic_csv):
    result = run_cli("fit", "E", synthetic_csv)
    assert result.returncode == 0
    assert "kx: 171.78" in result.stdout
    assert "N/m" in result.stdout


def test_fit_width_only_csv(tmp_path, sheet_e):
    lines = [",".join(MEASUREMENT_HEADER)]
    for d in (2.0, 5.0, 8.0):
        state, _ = deformed_geometry(sheet_e, d)
        lines.append(f"{d},{state.ly},,{0.1 * d}")
    path = tmp_path / "width_only.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    result = run_cli("fit", "E", path, "--format", "json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["mae_width_mm"] == pytest.approx(0.0, abs=1e-9)
    assert payload["mae_depth_mm"] is None


def test_fit_malformed_csv_names_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        "delta_x_mm,width_mm,depth_mm,force_n\n1,,,0.5\nbogus,,,0.7\n", encoding="utf-8"
    )
    result = run_cli("fit", "E", path)
    assert result.returncode == 2
    assert "line 3" in result.stderr


def test_fit_missing_file():
    result = run_cli("fit", "E", "/nonexistent/measurements.csv")
    assert result.returncode == 4


def test_loocv_text_and_csv(synthetic_csv):
    text = run_cli("loocv", "E", synthetic_csv)
    assert text.returncode == 0
    assert "mae:" in text.stdout
    csv_out = run_cli("loocv", "E", synthetic_csv, "--format", "csv")
    rows = csv_out.stdout.strip().splitlines()
    assert rows[0] == "row_index,delta_x_mm,predicted_force_n,actual_force_n,abs_error_n"
    assert len(rows) == 6
    js = run_cli("loocv", "E", synthetic_csv, "--format", "json")
    payload = json.loads(js.stdout)
    assert payload["mae_force_n"] <= 1e-9


def test_loocv_two_rows_insufficient(tmp_path, sheet_e):
    from kirisheet import stiffness_preset

    path = write_synthetic_csv(tmp_path / "two.csv", sheet_e, stiffness_preset("E"),
                               deltas=(2.5, 5.0))
    result = run_cli("loocv", "E", path)
    assert result.returncode == 2
    assert "3" in result.stderr


def test_mesh_export_and_determinism(tmp_path):
    out1 = tmp_path / "a.obj"
    out2 = tmp_path / "b.obj"
    r1 = run_cli("mesh", "E", "--delta-x", "5", "--out", out1)
    r2 = run_cli("mesh", "E", "--delta-x", "5", "--out", out2)
    assert r1.returncode == 0 and r2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("v ")


def test_mesh_csv_by_extension(tmp_path):
    out = tmp_path / "cloud.csv"
    result = run_cli("mesh", "E", "--delta-x", "5", "--out", out)
    assert result.returncode == 0
    assert out.read_text().splitlines()[0] == "x_mm,y_mm,z_mm,element_id"


def test_mesh_bad_extension(tmp_path):
    result = run_cli("mesh", "E", "--delta-x", "5", "--out", tmp_path / "m.stl")
    assert result.returncode == 2


def test_design_single_point(tmp_path):
    payload = {
        "requirement": {"food_width_mm": 8.0, "food_depth_mm": 3.0, "force_budget_n": 5.0},
        "base_spec": "E",
        "constants": "E",
    }
    path = tmp_path / "req.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    out = tmp_path / "result.csv"
    result = run_cli("design", path, "--out", out)
    assert result.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("spec_name,")
    assert len(lines) == 2
    assert ",true," in lines[1]


def test_design_grid_budget_monotonicity(tmp_path):
    def run(budget):
        payload = {
            "requirement": {"food_width_mm": 6.0, "food_depth_mm": 4.0,
                            "force_budget_n": budget},
            "base_spec": "E",
            "constants": "E",
            "grid": {"lx_init": [16.0, 17.8, 20.0], "ly_init": [24.0, 26.7]},
        }
        path = tmp_path / f"req_{budget}.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        result = run_cli("design", path)
        assert result.returncode == 0
        rows = result.stdout.strip().splitlines()[1:]
        return {r.split(",")[0] for r in rows if ",true," in r}

    assert run(0.8) <= run(5.0)


def test_design_missing_constants(tmp_path):
    payload = {
        "requirement": {"food_width_mm": 8.0, "food_depth_mm": 3.0, "force_budget_n": 5.0},
        "base_spec": "E",
    }
    path = tmp_path / "req.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    result = run_cli("design", path)
    assert result.returncode == 2
    assert "constants" in result.stderr


def test_outputs_are_deterministic(synthetic_csv):
    a = run_cli("deform", "E", "--sweep", "0:12:3", "--format", "csv")
    b = run_cli("deform", "E", "--sweep", "0:12:3", "--format", "csv")
    assert a.stdout == b.stdout
    fa = run_cli("fit", "E", synthetic_csv, "--format", "json")
    fb = run_cli("fit", "E", synthetic_csv, "--format", "json")
    assert fa.stdout == fb.stdout


def test_help_documents_units():
    result = run_cli("deform", "--help")
    assert result.returncode == 0
    assert "mm" in result.stdout
    force_help = run_cli("force", "--help")
    assert "N/m" in force_help.stdout
