import json
import subprocess
import sys

import pytest

from nullsum.cli import main
from nullsum.sumsetlab import build_example_11, example_12_instance


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, [json.loads(line) for line in out.splitlines()], err


def test_dq(capsys):
    status, out, _ = run(capsys, "dq", "--q", "15", "--x", "7")
    assert status == 0 and out == [{"member": False}]
    status, out, _ = run(capsys, "dq", "--q", "15", "--n", "3")
    assert out[0]["member"] is True


def test_coeff_with_oracle(capsys):
    status, out, _ = run(capsys, "coeff", "--delta", "1", "--ks", "2,2", "--ms", "0,1",
                         "--matrix", "[[1,2],[3,4]]", "--oracle")
    assert status == 0
    assert out[0]["closed_form"] == -10 and out[0]["oracle"] == -10 and out[0]["match"] is True


@pytest.mark.parametrize("argv,key,value", [
    (["--form", "cor21-det", "--k", "2", "--ms", "0,1", "--oracle"], "closed_form", -6),
    (["--form", "cor21-per", "--k", "2", "--ms", "0,1", "--oracle"], "closed_form", -10),
    (["--form", "thm22", "--k", "3", "--ls", "0,2", "--ms", "0,1"], "match", True),
    (["--form", "cor22", "--ks", "4,4", "--ms", "2,3"], "match", True),
    (["--ring", "GF(7)", "--ks", "2,2", "--ms", "0,1", "--oracle"], "closed_form", 1),
])
def test_coeff_forms(capsys, argv, key, value):
    status, out, _ = run(capsys, "coeff", "--matrix", "[[1,2],[3,4]]", *argv)
    assert status == 0 and out[0][key] == value


def test_matrix_verbs(capsys):
    assert run(capsys, "permanent", "--matrix", "[[1,2],[3,4]]")[1] == [{"permanent": 10, "ring": "ZZ", "method": "auto"}]
    assert run(capsys, "det", "--matrix", "[[1,2],[3,4]]", "--ring", "QQ")[1][0]["det"] == -2
    out = run(capsys, "permanent", "--matrix", "[[1,2],[3,1]]", "--ring", "GF(2^2)", "--method", "ryser")[1]
    det = run(capsys, "det", "--matrix", "[[1,2],[3,1]]", "--ring", "GF(2^2)")[1]
    assert out[0]["permanent"] == det[0]["det"]


def test_perb(capsys):
    assert run(capsys, "perB", "--q", "4", "--exps", "1,3")[1][0]["zero"] is True
    assert run(capsys, "perB", "--q", "3", "--exps", "0,1")[1][0]["per_B"] == [1, 1]


def test_examples(capsys):
    status, out, _ = run(capsys, "examples", "--which", "1.1ii")
    assert status == 0 and out[0]["T"] == [1] and out[0]["equality"] is True
    status, out, _ = run(capsys, "examples", "--which", "1.1i", "--p", "5")
    assert out[0]["enumeration"]["admissible_tuples"] == 0
    status, out, _ = run(capsys, "examples", "--which", "1.2")
    assert out[0]["size"] == 4 and out[0]["admissible_tuples"] == 0


def test_certify_verify_enumerate(capsys, tmp_path):
    inst = json.dumps(build_example_11(3, "i").to_json())
    assert run(capsys, "certify", "--input", inst)[1][0]["bound"] == 0
    assert run(capsys, "enumerate", "--input", inst)[1][0]["admissible_tuples"] == 0
    path = tmp_path / "batch.jsonl"
    path.write_text(inst + "\n" + json.dumps(build_example_11(variant="ii").to_json()) + "\n")
    status, out, _ = run(capsys, "verify", "--input", str(path))
    assert status == 0 and [r["pass"] for r in out] == [True, True]


def test_strict_mode(capsys):
    inst = json.dumps(example_12_instance(2, 3, 5).to_json())
    assert run(capsys, "certify", "--input", inst)[0] == 0
    assert run(capsys, "certify", "--input", inst, "--strict")[0] == 3
    assert run(capsys, "verify", "--input", inst, "--strict")[0] == 3


def test_snevily(capsys):
    assert run(capsys, "snevily", "--N", "2", "--A", "0,1", "--B", "0,1")[1][0]["witness"] is None
    assert run(capsys, "snevily", "--N", "5", "--A", "0,1", "--B", "0,2")[1][0]["witness"] is not None


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["certify", "--input", '{"carrier":'],
    ["certify", "--input", '{"carrier": {"kind": "prime-field", "p": 4}, "mode": "S_eq14", "subsets": [[0]]}'],
    ["sweep", "--suite", "nope"],
    ["coeff", "--delta", "1", "--ks", "1,1", "--ms", "3,1", "--matrix", "[[1,2],[3,4]]"],
    ["dq", "--q", "15"],
    ["coeff", "--matrix", "[[1,2]]", "--ks", "1", "--ms", "0"],
])
def test_usage_errors_are_one_json_line(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 2 and out == []
    lines = err.strip().splitlines()
    assert len(lines) == 1 and "error" in json.loads(lines[0])


def test_sweep_jobs_do_not_change_output(capsys):
    status, out1, _ = run(capsys, "sweep", "--suite", "dq", "--jobs", "1")
    status2, out2, _ = run(capsys, "sweep", "--suite", "dq", "--jobs", "2")
    assert status == status2 == 0 and out1 == out2
    summary = out1[-1]
    assert summary["summary"] and summary["failed"] == 0
    assert summary["passed"] == sum(1 for r in out1[:-1] if r["pass"])


def test_output_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert main(["dq", "--q", "6", "--x", "5", "--output", str(target)]) == 0
    assert json.loads(target.read_text()) == {"member": True}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nullsum", "dq", "--q", "15", "--x", "7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"member": False}
