import io
import json
import subprocess
import sys

import pytest

from clusterpos.cli import main
from clusterpos.flagpos import CriterionReport

A3 = ["--family", "A", "--rank", "3", "--k", "2", "--word", "2,1,3,2,1,3"]
D4 = ["--family", "D", "--rank", "4", "--k", "1,2,3", "--word", "1,2,3,1,2,3,4,3,2,1,3,4"]
COUNTER = [["1", "1", "1", "2"], ["0", "1", "0", "-1"], ["0", "0", "1", "1"], ["0", "0", "0", "1"]]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_criteria_symbolic_golden():
    code, out, _ = run(["criteria", *A3, "--symbolic"])
    assert code == 0
    bodies = {line.split(": ", 1)[1] for line in out.splitlines() if not line.startswith("#")}
    assert bodies == {"n34 > 0", "n12 > 0", "n14 > 0", "n13*n34 - n14 > 0",
                      "-n12*n24 - n13*n34 + n14 > 0"}


def test_criteria_d4_lists_six_functions():
    code, out, _ = run(["criteria", *D4, "--format", "json"])
    data = json.loads(out)
    assert code == 0 and [f["vertex"] for f in data["functions"]] == [-4, 4, 5, 6, 7, 8]
    assert "w3" in data["functions"][3]["expression"]


def test_criteria_derives_word():
    code, out, _ = run(["criteria", "--family", "A", "--rank", "3", "--k", "2"])
    assert code == 0 and "word=[2," in out


def test_invalid_word():
    code, _, err = run(["criteria", "--family", "A", "--rank", "3", "--word", "1,1,2,3,2,1"])
    assert code == 2 and "NotReduced" in err


def test_unsupported_type():
    code, _, err = run(["criteria", "--family", "D", "--rank", "3"])
    assert code == 2 and "UnsupportedType" in err


def test_counterexample_rejected(tmp_path):
    path = write(tmp_path, "m.json", {"matrix": COUNTER})
    code, out, _ = run(["test", *A3, "--input", path])
    assert code == 1
    assert "verdict: rejected" in out and "witness: vertex 1, D_{13;34} = -1" in out


def test_params_accepted_and_json_round_trip(tmp_path):
    path = write(tmp_path, "p.json", {"params": ["1"] * 6})
    code, out, _ = run(["test", *A3, "--input", path, "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "accepted"
    assert CriterionReport.from_dict(data).to_dict() == data


def test_full_flag_test_via_params(tmp_path):
    path = write(tmp_path, "p.json", {"params": ["1", "1/2", "3"]})
    code, out, _ = run(["test", "--family", "A", "--rank", "2", "--word", "1,2,1", "--input", path])
    assert code == 0 and "verdict: accepted" in out


@pytest.mark.parametrize("data", [
    {"matrix": [["2", "0"], ["0", "1"]]},
    {"matrix": [["1", "1.5", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]},
    {"params": ["1", "1"]},
    {"params": ["1"] * 6, "matrix": COUNTER},
    {},
])
def test_malformed_input(tmp_path, data):
    path = write(tmp_path, "bad.json", data)
    code, _, err = run(["test", *A3, "--input", path])
    assert code == 2 and err.startswith("error:")


def test_non_unit_diagonal(tmp_path):
    m = [row[:] for row in COUNTER]
    m[2][2] = "2"
    code, _, err = run(["test", *A3, "--input", write(tmp_path, "m.json", {"matrix": m})])
    assert code == 2 and "NotUnitriangular" in err


def test_singular_exit_code(tmp_path):
    m = [row[:] for row in COUNTER]
    m[2][3] = "0"
    path = write(tmp_path, "m.json", {"matrix": m})
    code, out, _ = run(["test", *A3, "--mutations", "2", "--input", path])
    assert code == 3 and "singular" in out


def test_config_file_and_inline_config(tmp_path):
    cfg = write(tmp_path, "cfg.json", {"family": "A", "rank": 3, "K": [2], "word": [2, 1, 3, 2, 1, 3]})
    code, out, _ = run(["criteria", "--config", cfg, "--symbolic"])
    assert code == 0 and "n13*n34 - n14 > 0" in out
    inline = write(tmp_path, "in.json", {"family": "A", "rank": 3, "K": [2], "word": [2, 1, 3, 2, 1, 3],
                                         "matrix": COUNTER})
    code, _, _ = run(["test", "--input", inline])
    assert code == 1


def test_mutate_prints_new_variables():
    code, out, _ = run(["mutate", *A3, "--mutations", "2,3", "--symbolic"])
    assert code == 0
    assert "   2: n13" in out and "   3: -n24" in out


def test_mutate_frozen_vertex_is_input_error():
    code, _, err = run(["mutate", *A3, "--mutations", "1"])
    assert code == 2 and "FrozenVertex" in err


def test_selfcheck_negative_control():
    code, out, _ = run(["selfcheck", "--only", "3", "--corrupt-quiver"])
    assert code != 0 and "[FAIL]  3" in out


def test_selfcheck_subset_passes():
    code, out, _ = run(["selfcheck", "--only", "1,2,4,10"])
    assert code == 0 and "4/4 suites passed" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clusterpos", "criteria", *A3, "--symbolic"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "n14 > 0" in proc.stdout
