import json
import subprocess
import sys

import pytest

from pitrace import Matrix, MatrixTuple
from pitrace.cli import COMMANDS, main, run
from pitrace.errors import ParseError
from pitrace.tuplefile import dump_tuple, load_tuple, load_tuples, tuple_from_dict, tuple_to_dict

from conftest import E


@pytest.fixture
def files(tmp_path, pair, conj_g):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    other = MatrixTuple([E(1, 2), E(2, 1) + E(1, 2)])
    return {
        "pair": write("pair.json", tuple_to_dict(pair)),
        "conj": write("conj.json", tuple_to_dict(pair.conjugate_by(conj_g))),
        "other": write("other.json", tuple_to_dict(other)),
        "diag": write("diag.json", tuple_to_dict(MatrixTuple([Matrix.diag(1, 2), Matrix.diag(3, 4)]))),
        "points": write("points.json", [tuple_to_dict(pair)]),
        "targets": write("targets.json", [tuple_to_dict(pair.conjugate_by(conj_g)), tuple_to_dict(other)]),
        "bad": write("bad.json", {"n": 2, "m": 1, "matrices": [[[1, 2]]]}),
        "tmp": tmp_path,
    }


def result(argv):
    code, record, _ = run(argv)
    assert code == 0, record.get("error")
    return record["result"]


def test_spec_examples(files):
    assert result(["generates", "--tuple", files["pair"]])["generates"] is True
    r = result(["check-central", "--n", "2", "--builtin", "comm_sq", "--mode", "exact"])
    assert r["isCentral"] is True
    r = result(["eval", "--expr", "tr(X1*X2)", "--tuple", files["pair"]])
    assert r["isScalar"] is True and r["scalar"] == "1"


def test_every_subcommand_runs(files):
    cases = {
        "eval": ["--expr", "X1*X2", "--tuple", files["pair"]],
        "generates": ["--tuple", files["diag"]],
        "conjugate": ["--tuple", files["pair"], "--target", files["conj"]],
        "fingerprint": ["--tuples", files["points"], "--target", files["other"], "--maxlen", "2"],
        "check-pi": ["--n", "2", "--builtin", "std(4)"],
        "check-central": ["--n", "2", "--expr", "X1", "--mode", "random", "--trials", "8"],
        "make-central": ["--n", "2"],
        "central-for-points": ["--tuples", files["points"]],
        "ideal-of-points": ["--tuples", files["points"], "--degree", "2"],
        "separate": ["--tuples", files["points"], "--target", files["other"], "--degree", "2"],
        "zero-locus": ["--tuple", files["pair"], "--expr", "X1^2 - 1", "--expr", "X2^2 - 1"],
        "nss-experiment": ["--tuples", files["points"], "--target", files["targets"], "--degree", "2"],
        "builtins": [],
    }
    assert set(cases) == set(COMMANDS)
    out = {name: result([name] + argv) for name, argv in cases.items()}
    assert out["generates"] == {"generates": False, "spanChain": [1, 2]}
    assert out["conjugate"]["conjugate"] and out["conjugate"]["intertwinerDim"] == 1
    assert out["fingerprint"]["verdicts"] == ["Distinct"]
    assert out["check-pi"]["isPI"] and out["check-pi"]["mode"] == "deterministic"
    assert out["check-central"]["isCentral"] is False
    assert out["make-central"]["verdict"]["isCentral"]
    assert out["central-for-points"]["reports"][0]["isScalar"]
    assert out["ideal-of-points"]["kernelDim"] == 3
    assert out["separate"] == {**out["separate"], "separated": True, "witness": "X2^2"}
    assert out["zero-locus"]["member"] is False and out["zero-locus"]["image"] == "FullImage"
    assert [t["member"] for t in out["nss-experiment"]["targets"]] == [True, False]
    assert "std" in " ".join(out["builtins"]["builtins"])


def test_exit_codes(files, monkeypatch):
    assert run(["eval", "--expr", "X1 + * X2", "--tuple", files["pair"]])[0] == 2
    assert run(["generates", "--tuple", files["bad"]])[0] == 2
    assert run(["generates", "--tuple", str(files["tmp"] / "missing.json")])[0] == 2
    assert run(["check-pi", "--n", "2", "--builtin", "nosuch"])[0] == 2
    assert run(["conjugate", "--tuple", files["pair"], "--target", files["diag"]])[0] == 3
    assert run(["check-pi", "--n", "2", "--expr", "tr(X1)*X2"])[0] == 3
    monkeypatch.setenv("PITRACE_MAX_TERMS", "50")
    code, record, _ = run(["ideal-of-points", "--tuples", files["points"], "--degree", "6"])
    assert code == 4 and record["ceilings"]["maxTerms"] == 50
    # negative verdicts are successes
    assert run(["check-pi", "--n", "2", "--builtin", "comm_sq"])[0] == 0


def test_main_writes_out_file(files, capsys):
    out = files["tmp"] / "rec.json"
    assert main(["generates", "--tuple", files["pair"], "--out", str(out)]) == 0
    record = json.loads(out.read_text())
    assert record["command"] == "generates" and record["result"]["generates"]
    assert capsys.readouterr().out == ""


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "pitrace", "eval", "--expr", "X1*X2", "--tuple", files["pair"]],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == [[1, 0], [0, 0]]


def test_tuplefile_roundtrip(tmp_path):
    raw = {"n": 2, "m": 2, "matrices": [[[1, "1/2"], ["-3/4", 0]], [[0, 5], [2, "2/1"]]]}
    a = tuple_from_dict(raw)
    canon = tuple_to_dict(a)
    assert canon["matrices"][1][1][1] == 2
    assert tuple_to_dict(tuple_from_dict(canon)) == canon
    path = tmp_path / "t.json"
    dump_tuple(a, path)
    assert load_tuple(path) == a
    path.write_text(json.dumps({"tuples": [canon, canon]}))
    assert load_tuples(path) == [a, a]


@pytest.mark.parametrize(
    "raw",
    [
        {"n": 2, "m": 1, "matrices": [[[1, 2], [3]]]},
        {"n": 2, "m": 2, "matrices": [[[1, 0], [0, 1]]]},
        {"n": 1, "m": 1, "matrices": [[["1/0"]]]},
        {"n": 1, "m": 1, "matrices": [[[1.5]]]},
        {"n": 1, "matrices": [[[1]]]},
    ],
)
def test_tuplefile_rejects_malformed(raw):
    with pytest.raises(ParseError):
        tuple_from_dict(raw)


def test_replay_is_deterministic(files):
    argv_list = [
        ["check-pi", "--n", "2", "--builtin", "std(3)", "--mode", "random", "--trials", "16", "--seed", "9"],
        ["check-central", "--n", "2", "--builtin", "comm_sq", "--mode", "random", "--seed", "2"],
        ["central-for-points", "--tuples", files["points"], "--seed", "5"],
        ["make-central", "--n", "2", "--seed", "1"],
    ]
    for argv in argv_list:
        first = run(argv)[1]
        replay = run([first["command"]] + argv[1:])[1]
        assert json.dumps(first["result"], sort_keys=True) == json.dumps(replay["result"], sort_keys=True)
        assert first["seed"] == replay["seed"] is not None


def test_jobs_do_not_change_payloads(files):
    for argv in (
        ["nss-experiment", "--tuples", files["points"], "--target", files["targets"], "--degree", "3"],
        ["fingerprint", "--tuples", files["targets"], "--maxlen", "4"],
    ):
        serial = run(argv)[1]["result"]
        parallel = run(argv + ["--jobs", "4"])[1]["result"]
        assert serial == parallel
