import json
import os
import subprocess
import sys
from pathlib import Path


CLI = [sys.executable, "-m", "steinhaus.cli"]


def run_cli(*args, check=True, env=None):
    result = subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env
    )
    if check and result.returncode != 0:
        raise AssertionError(f"cli failed: {result.returncode}\n{result.stderr}")
    return result


def run_cli_bytes(*args):
    result = subprocess.run(CLI + list(args), capture_output=True)
    assert result.returncode == 0, result.stderr
    return result.stdout


def test_kernel_csv_matches_golden(golden_dir):
    out = run_cli("kernel", "--p-max", "24", "--format", "csv").stdout
    assert out == (golden_dir / "kernel_dimensions.csv").read_text()


def test_classes_csv_matches_golden(golden_dir):
    out = run_cli("classes", "--p-max", "24", "--format", "csv").stdout
    assert out == (golden_dir / "class_counts.csv").read_text()


def test_balanced_classes_csv_matches_golden(golden_dir):
    out = run_cli("balanced-classes", "--p-max", "24", "--format", "csv").stdout
    assert out == (golden_dir / "balanced_class_counts.csv").read_text()


def test_balanced_class_listing_matches_golden(golden_dir):
    out = run_cli("balanced-classes", "--p", "24", "--format", "csv").stdout
    lines = out.strip().splitlines()
    rows = [line.split(",")[:2] for line in lines[1:]]
    golden = (golden_dir / "balanced_representatives_p24.csv").read_text().strip().splitlines()
    assert ["index,representative"] + [",".join(r) for r in rows] == golden


def test_class_listing_csv():
    out = run_cli("classes", "--p", "6", "--format", "csv").stdout
    assert out.splitlines() == [
        "p,representative,orbit_size",
        "6,000000,1",
        "6,000101,12",
        "6,011011,3",
    ]


def test_triangle_seed():
    out = run_cli("triangle", "--seed-tuple", "0010100").stdout
    assert "counts 0:14 1:14" in out
    assert "balanced=yes" in out


def test_triangle_pascal_json():
    out = run_cli(
        "triangle", "--left", "0000101", "--right", "0100001", "--format", "json"
    ).stdout
    payload = json.loads(out)
    assert payload["balanced"] is True
    assert payload["counts"] == {"0": 14, "1": 14}
    assert payload["triangle"]["size"] == 7
    assert payload["triangle"]["rows"][6] == [1, 0, 1, 0, 0, 1, 1]


def test_triangle_mod7():
    out = run_cli("triangle", "--seed-tuple", "2330445", "--modulus", "7").stdout
    assert "balanced=yes" in out


def test_search_p12_empty_json():
    payload = json.loads(run_cli("search", "--p", "12", "--format", "json").stdout)
    assert [c["steinhaus"]["remainder_count"] for c in payload["classes"]] == [0, 0]
    assert [c["pascal"]["remainder_count"] for c in payload["classes"]] == [0, 0]


def test_search_p24_json_counts():
    payload = json.loads(
        run_cli("search", "--p", "24", "--kind", "steinhaus", "--format", "json").stdout
    )
    counts = [c["steinhaus"]["remainder_count"] for c in payload["classes"]]
    assert counts == [18, 16, 23, 24, 17, 24, 24, 24, 24, 23, 24, 23, 20, 20, 23, 0, 0]
    witness = payload["classes"][8]["steinhaus"]["witnesses"][0]
    assert set(witness) == {
        "kind", "generator", "position", "remainder",
        "corner_counts", "band_counts", "period_counts", "z",
    }


def test_search_k_verify():
    out = run_cli("search", "--p", "12", "--k-verify", "2").stdout
    assert "verified 0 certificates" in out


def test_census_csv():
    out = run_cli("census", "--kind", "steinhaus", "--n-max", "3", "--format", "csv").stdout
    lines = out.strip().splitlines()
    assert lines[0] == "n,triangles,total_ones,average,expected_average,max_ones,formula_max"
    assert lines[1] == "1,2,1,0.5,0.5,1,1"
    assert lines[3] == "3,8,24,3.0,3.0,4,4"


def test_modm_ap_csv():
    out = run_cli(
        "modm", "--scan", "ap", "--modulus", "3", "--n-max", "6", "--format", "csv"
    ).stdout
    lines = out.strip().splitlines()
    assert lines[0] == "m,sequence,n,balanced,spread"
    assert lines[5] == "3,1,5,yes,0"
    assert lines[6] == "3,1,6,yes,0"


def test_modm_interlaced_csv():
    out = run_cli(
        "modm", "--scan", "interlaced", "--modulus", "3", "--n-max", "9",
        "--format", "csv",
    ).stdout
    assert "3,interlaced,9,yes,0" in out


def test_render_orbit_pbm(tmp_path: Path):
    target = tmp_path / "orbit.pbm"
    run_cli(
        "render", "orbit", "--seed-tuple", "000000101000111110001101",
        "--out", str(target),
    )
    tokens = target.read_text().split()
    assert tokens[:3] == ["P1", "24", "24"]
    assert sum(1 for t in tokens[3:] if t == "1") == 288


def test_render_family(tmp_path: Path):
    target = tmp_path / "family.pbm"
    run_cli(
        "render", "family", "--seed-tuple", "000000101000111110001101",
        "--i0", "6", "--j0", "9", "--r", "6", "--k", "1", "--out", str(target),
    )
    tokens = target.read_text().split()
    assert tokens[:3] == ["P1", "30", "30"]


def test_render_family_rejection_exits_one(tmp_path: Path):
    result = run_cli(
        "render", "family", "--seed-tuple", "000001110111000001110111",
        "--i0", "0", "--j0", "0", "--r", "5", "--k", "1",
        "--out", str(tmp_path / "x.pbm"), check=False,
    )
    assert result.returncode == 1
    assert "balanced family" in result.stderr


def test_validation_failure_exit_code():
    result = run_cli("triangle", "--seed-tuple", "012", check=False)
    assert result.returncode == 1
    assert result.stderr.startswith("error:")


def test_usage_error_exit_code():
    result = run_cli("no-such-command", check=False)
    assert result.returncode == 2


def test_byte_determinism():
    args = ("search", "--p", "12", "--format", "json")
    assert run_cli_bytes(*args) == run_cli_bytes(*args)


def test_jobs_env_and_flag_equivalence():
    env = dict(os.environ, STEINHAUS_JOBS="2")
    via_env = subprocess.run(
        CLI + ["search", "--p", "12", "--format", "csv"],
        capture_output=True, env=env,
    )
    via_flag = run_cli_bytes("search", "--p", "12", "--jobs", "2", "--format", "csv")
    single = run_cli_bytes("search", "--p", "12", "--jobs", "1", "--format", "csv")
    assert via_env.stdout == via_flag == single


def test_out_flag_writes_file(tmp_path: Path):
    target = tmp_path / "kernel.csv"
    run_cli("kernel", "--p-max", "6", "--format", "csv", "--out", str(target))
    assert target.read_text().splitlines()[3] == "3,2,4"
