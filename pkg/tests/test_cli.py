import json
import shutil
import subprocess
import sys

import pytest

from eqalg import cli
from eqalg.io import dumps, load_object, render_text
from eqalg.mackey import burnside_mackey, mackey_from_json


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_witt_decompose(capsys):
    code, out, _ = run(["witt", "--base", "f2", "--decompose", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["invariant_factors"] == [4]


def test_group_ring_matches_golden(capsys):
    code, out, _ = run(["group-ring", "--group", "c2", "--base", "Z", "--format", "json"], capsys)
    assert code == 0
    assert out == (cli.default_golden_dir() / "group_ring_c2_z.json").read_text()


def test_graded_degree_zero(capsys):
    code, out, _ = run(["graded", "--target", "phi-z", "--max-degree", "0", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["dims"] == [1]


def test_text_output(capsys):
    code, out, _ = run(["thr-pi0", "--base", "F3"], capsys)
    assert code == 0 and out.strip()
    code, out, _ = run(["graded", "--target", "thh-z", "--max-degree", "5"], capsys)
    assert "Z/3" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["laurent", "--window", "2", "--format", "json", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())


def test_bad_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["validate", "--input", str(bad)], capsys)
    assert code == 2
    assert json.loads(err.strip().splitlines()[-1])["error"] == "parse"


def test_schema_mismatch_exits_2(tmp_path, capsys):
    bad = tmp_path / "m.json"
    bad.write_text(json.dumps({"kind": "mackey", "level_e": {"free_rank": 1}}))
    code, _, _ = run(["validate", "--input", str(bad)], capsys)
    assert code == 2


def test_missing_file_exits_2(tmp_path, capsys):
    code, _, _ = run(["box", "--input", str(tmp_path / "none.json"), "--input", "burnside"], capsys)
    assert code == 2


def test_validation_failure_exits_3(tmp_path, capsys):
    obj = burnside_mackey().to_json()
    obj["kind"] = "mackey"
    obj["tran"] = [[1], [1]]
    path = tmp_path / "m.json"
    path.write_text(json.dumps(obj))
    code, out, err = run(["validate", "--input", str(path), "--format", "json"], capsys)
    assert code == 3
    assert "double coset" in out
    assert json.loads(err.strip())["error"] == "validation"


def test_unsupported_exits_4(capsys):
    code, _, err = run(["laurent", "--base", "F2"], capsys)
    assert code == 4 and json.loads(err.strip())["error"] == "unsupported"
    code, _, _ = run(["witt", "--base", "Z", "--decompose"], capsys)
    assert code == 4


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["graded", "--target", "nope"])
    assert exc.value.code == 2


def test_deterministic(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run(["box", "--input", "burnside", "--input", "F2", "--format", "json"], capsys)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_mackey_file_roundtrip(tmp_path, capsys):
    code, out, _ = run(["box", "--input", "F3", "--input", "burnside", "--format", "json"], capsys)
    result = json.loads(out)["result"]
    result["kind"] = "mackey"
    path = tmp_path / "r.json"
    path.write_text(dumps(result))
    kind, M = load_object(path)
    assert kind == "mackey"
    assert dumps(M.to_json() | {"kind": "mackey"}) == dumps(result)
    code, _, _ = run(["box", "--input", str(path), "--input", "burnside"], capsys)
    assert code == 0
    assert mackey_from_json(result).summary() == M.summary()


def test_golden_files_current():
    assert all(not diff for _, diff in cli.check_golden(cli.default_golden_dir()))


def test_golden_drift_shows_diff(tmp_path):
    d = tmp_path / "golden"
    shutil.copytree(cli.default_golden_dir(), d)
    path = d / "laurent_5.json"
    path.write_text(path.read_text().replace('"t^2"', '"t^9"', 1))
    drift = dict(cli.check_golden(d))
    assert not any(drift[n] for n in drift if n != "laurent_5")
    text = "\n".join(drift["laurent_5"])
    assert text.startswith("--- golden/laurent_5.json") and '-' in text and '"t^2"' in text


def test_fault_injection_reports_double_coset(capsys):
    code, out, _ = run(["selftest", "--inject-fault", "burnside-tran"], capsys)
    assert code == 1
    assert "FAIL input mackey.validate_mackey(burnside)" in out
    assert "double coset" in out


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "eqalg.cli", "graded", "--target", "phi-f2", "--max-degree", "3", "--format", "json"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["dims"] == [1, 2, 3, 4]


def test_render_text_matrix():
    assert "1 0" in render_text({"m": [[1, 0], [0, 1]]})
