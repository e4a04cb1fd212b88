import json
import os
import subprocess
import sys

import pytest

from monadlab import FieldSpec, MonadShape, construct_monad
from monadlab.cli import run
from monadlab.io import MatrixFileError, instance_from_json, instance_to_json, io_matrix, read_instance


@pytest.fixture(params=[FieldSpec.rational(), FieldSpec.prime(5)], ids=["QQ", "F5"])
def instance(request):
    return construct_monad(MonadShape(2, 6, 1, 3), request.param, seed=4)


def test_round_trip(instance, tmp_path):
    path = tmp_path / "m.json"
    io_matrix(path, "write", instance)
    back = io_matrix(path, "read")
    assert back.A == instance.A and back.B == instance.B
    assert back.shape == instance.shape and back.field == instance.field
    assert back.provenance == instance.provenance
    assert back.certified_beta_surjective == instance.certified_beta_surjective


def test_rejects_twist_contradiction(instance):
    doc = instance_to_json(instance)
    doc["matrices"]["A"]["col_twists"][0] = 2
    with pytest.raises(MatrixFileError, match="matrices.A"):
        instance_from_json(doc)


def test_rejects_num_vars_mismatch(instance):
    doc = instance_to_json(instance)
    doc["num_vars"] = 5
    doc["variables"] = [f"z{i}" for i in range(5)]
    with pytest.raises(MatrixFileError, match="num_vars is 5"):
        instance_from_json(doc)


def test_rejects_bad_coefficient_and_json(instance, tmp_path):
    doc = instance_to_json(instance)
    doc["matrices"]["B"]["entries"][0][0][0][0] = "x"
    with pytest.raises(MatrixFileError, match=r"matrices.B.entries\[0\]\[0\]"):
        instance_from_json(doc)
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"field\": \n")
    with pytest.raises(MatrixFileError, match="line"):
        read_instance(bad)


def _cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_decide(capsys):
    code, out, _ = _cli(capsys, "decide", "--a", "1", "--b", "4", "--c", "1", "--k", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["exists"] is True and doc["condition_1"] is True and doc["expected_codim"] == 3
    assert doc["config"] == {"seed": 0, "primes": [3, 5, 7, 11], "trials": 1000, "budget": 10 ** 8}


def test_cli_chern_solve(capsys):
    code, out, _ = _cli(capsys, "chern-solve", "--r", "-1")
    assert code == 0
    doc = json.loads(out)
    assert doc["solutions"] == [[0, 0], [11, 22]]
    assert doc["config"]["m_range"] == [-3, 15] and doc["config"]["n_range"] == [-3, 30]


def test_cli_chern_eval(capsys):
    code, out, _ = _cli(capsys, "chern-eval", "--r", "0", "--m", "2", "--n", "6")
    doc = json.loads(out)
    assert code == 0 and doc["chern"] == ["1", "-1", "4", "0", "0"] and doc["rank"] == 2
    code, _, err = _cli(capsys, "chern-eval", "--r", "1", "--m", "0", "--n", "-1")
    assert code == 2 and "negative rank" in err
    code, out, _ = _cli(capsys, "chern-eval", "--terms", "0:0:2,1:1:1,0:-1:1", "--dim", "2")
    assert code == 0 and json.loads(out)["rank"] == 2


def test_cli_construct_then_verify(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = _cli(capsys, "construct", "--a", "1", "--b", "4", "--c", "1", "--k", "3", "--q", "5",
                        "--seed", "7", "--out", str(path))
    assert code == 0 and json.loads(out)["route"] == "condition_1"
    code, out, _ = _cli(capsys, "verify", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["is_complex"] is True and doc["is_monad"] is True


def test_cli_verify_failure_exit_code(capsys, tmp_path):
    M = construct_monad(MonadShape(1, 4, 1, 3), FieldSpec.prime(5), seed=0)
    doc = instance_to_json(M)
    doc["matrices"]["B"]["entries"][0] = [[] for _ in range(4)]
    doc["matrices"]["B"]["entries"][0][0] = [["1", [1, 0, 0, 0]]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, _ = _cli(capsys, "verify", str(path))
    assert code == 1 and json.loads(out)["is_monad"] is False


def test_cli_input_errors(capsys, tmp_path):
    assert _cli(capsys, "construct", "--a", "2", "--b", "5", "--c", "2", "--k", "3")[0] == 2
    assert _cli(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "junk.json").write_text("[1,")
    assert _cli(capsys, "verify", str(tmp_path / "junk.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["decide", "--a", "1"])
    assert exc.value.code == 2
    code, _, err = _cli(capsys, "strata", "--base", "1", "1", "1", "--primes", "11", "--budget", "10")
    assert code == 2 and "budget" in err


def test_cli_strata(capsys, tmp_path):
    code, out, _ = _cli(capsys, "strata", "--base", "1", "2", "0")
    assert code == 0 and json.loads(out)["base"]["ok"] is True
    path = tmp_path / "m.json"
    _cli(capsys, "construct", "--a", "1", "--b", "4", "--c", "1", "--k", "3", "--q", "5", "--out", str(path))
    code, out, _ = _cli(capsys, "strata", str(path), "--matrix", "B")
    doc = json.loads(out)
    assert code == 0 and doc["counts"]["5"][0]["count"] == 0


def test_cli_search_and_explore(capsys):
    code, out, _ = _cli(capsys, "search", "--a", "1", "--b", "3", "--c", "1", "--k", "3", "--q", "3",
                        "--trials", "50")
    doc = json.loads(out)
    assert code == 0 and doc["witnesses"] == [] and doc["decision"]["exists"] is False
    code, out, _ = _cli(capsys, "explore", "--k", "3", "--r", "1", "--n", "1", "--trials", "5")
    doc = json.loads(out)
    assert code == 0 and doc["predicate"] is False and doc["config"]["primes"] == [3, 5, 7]


def test_cli_writes_only_to_out(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    _cli(capsys, "search", "--a", "1", "--b", "4", "--c", "1", "--k", "2", "--q", "3", "--trials", "20")
    assert list(tmp_path.iterdir()) == []


def _subprocess(argv, **env):
    e = dict(os.environ, NUMBA_NUM_THREADS="4")
    e.update(env)
    return subprocess.run([sys.executable, "-m", "monadlab.cli", *argv], capture_output=True, env=e, check=True).stdout


@pytest.mark.parametrize("argv", [
    ["search", "--a", "1", "--b", "4", "--c", "1", "--k", "3", "--q", "3", "--trials", "30", "--seed", "2"],
    ["construct", "--a", "2", "--b", "6", "--c", "1", "--k", "3", "--seed", "5"],
    ["strata", "--base", "2", "1", "1", "--primes", "3,5,7"],
])
def test_cli_bytes_independent_of_threads_and_backend(argv):
    base = _subprocess(argv, MONADLAB_THREADS="1")
    assert _subprocess(argv, MONADLAB_THREADS="1") == base
    assert _subprocess(argv + ["--threads", "4"]) == base
    assert _subprocess(argv, MONADLAB_BACKEND="numpy") == base
