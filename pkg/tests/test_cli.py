"""CLI contract: flags, formats, exit codes."""

import json

import pytest

from ecamine.cli import main


def invoke(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_csv_l5(capsys):
    code, out, _ = invoke(capsys, "table", "--l", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("pattern,0,1,")
    assert lines[1].startswith("00000,0,")
    assert lines[1].endswith(",7")  # rule 255 -> 111
    assert len(lines) == 33


def test_table_rule_subset(capsys):
    code, out, _ = invoke(capsys, "table", "--l", "5", "--rules", "90")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "pattern,90"
    assert lines[1 + 0b00100] == "00100,5"


def test_table_json(capsys):
    code, out, _ = invoke(capsys, "table", "--l", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["l"] == 4
    assert payload["patterns"][0] == "0000"
    assert len(payload["values"]) == 16


def test_table_l_too_small(capsys):
    code, _, err = invoke(capsys, "table", "--l", "2")
    assert code == 2
    assert "3" in err


def test_table_noise_requires_seed(capsys):
    code, _, err = invoke(capsys, "table", "--l", "5", "--noise-p", "0.2")
    assert code == 2
    assert "seed" in err


def test_table_bad_rules(capsys):
    assert invoke(capsys, "table", "--l", "5", "--rules", "400")[0] == 2
    assert invoke(capsys, "table", "--l", "5", "--rules", "9-2")[0] == 2


def test_table_noisy_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        code, _, _ = invoke(
            capsys,
            "table", "--l", "5", "--noise-p", "0.2", "--seed", "7",
            "--out", str(path),
        )
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_table_out_file_unwritable(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "t.csv"
    code, _, err = invoke(capsys, "table", "--l", "4", "--out", str(target))
    assert code == 1
    assert "i/o" in err


def test_unknown_flag_rejected(capsys):
    assert main(["table", "--l", "5", "--bogus"]) == 2


def test_unknown_subcommand_rejected(capsys):
    assert main(["frobnicate"]) == 2


def test_spectrum_csv_l4(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--l", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# l=4")
    assert "component_count=7" in lines[1]
    assert "dropped_columns=[0, 255]" in lines[1]
    assert lines[2] == "index,eigenvalue"
    first = float(lines[3].split(",")[1])
    assert abs(first - 52.6802) <= 1e-3


def test_spectrum_json_noisy(capsys):
    code, out, _ = invoke(
        capsys, "spectrum", "--l", "5", "--noise-p", "0.8", "--seed", "3",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["component_count"] == 31
    assert payload["config"]["seed"] == 3


def test_spectrum_invalid_probability(capsys):
    code, _, err = invoke(capsys, "spectrum", "--l", "5", "--noise-p", "1.5")
    assert code == 2
    assert "[0, 1]" in err


def test_reproduce_original_passes(capsys):
    code, out, _ = invoke(capsys, "reproduce", "--table", "original", "--tol", "1e-3")
    assert code == 0
    assert out.count("run l=") == 6
    assert "passed for all 6 runs" in out


def test_reproduce_mismatch_exit_code(capsys):
    # printed reference values are 4-decimal roundings, so 1e-12 cannot hold
    code, out, _ = invoke(capsys, "reproduce", "--table", "original", "--tol", "1e-12")
    assert code == 3
    assert "FAILED" in out


def test_reproduce_noisy_structural(capsys):
    code, out, _ = invoke(capsys, "reproduce", "--table", "noisy-l5", "--seed", "11")
    assert code == 0
    assert out.count("run l=5") == 4


def test_reproduce_noisy_requires_seed(capsys):
    code, _, err = invoke(capsys, "reproduce", "--table", "noisy-l5")
    assert code == 2
    assert "seed" in err


def test_reproduce_unknown_table(capsys):
    assert main(["reproduce", "--table", "unknown"]) == 2


def test_sweep_noiseless(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    code, out, _ = invoke(
        capsys, "sweep", "--l-list", "4", "--p-list", "0", "--out-dir", str(out_dir)
    )
    assert code == 0
    index = json.loads((out_dir / "index.json").read_text())
    assert len(index["reports"]) == 1
    entry = index["reports"][0]
    assert entry["component_count"] == 7
    assert entry["passed"] is True
    report = json.loads((out_dir / entry["file"]).read_text())
    assert report["config"]["l"] == 4


def test_sweep_exploratory_noise_has_no_verdict(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    code, _, _ = invoke(
        capsys,
        "sweep", "--l-list", "5", "--p-list", "0.05,0.10", "--seed", "1",
        "--out-dir", str(out_dir),
    )
    assert code == 0
    index = json.loads((out_dir / "index.json").read_text())
    assert len(index["reports"]) == 2
    assert all(entry["passed"] is None for entry in index["reports"])


def test_sweep_noisy_grid_counts(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    code, _, _ = invoke(
        capsys,
        "sweep", "--l-list", "5", "--p-list", "0.2,0.4,0.6,0.8", "--seed", "1",
        "--out-dir", str(out_dir),
    )
    assert code == 0
    index = json.loads((out_dir / "index.json").read_text())
    assert [e["component_count"] for e in index["reports"]] == [31, 31, 31, 31]


def test_sweep_requires_seed_for_noise(capsys):
    code, _, err = invoke(capsys, "sweep", "--l-list", "5", "--p-list", "0.2")
    assert code == 2
    assert "seed" in err


def test_sweep_rejects_bad_lists(capsys):
    assert invoke(capsys, "sweep", "--l-list", "", "--p-list", "0")[0] == 2
    assert invoke(capsys, "sweep", "--l-list", "5", "--p-list", "2.0")[0] == 2
