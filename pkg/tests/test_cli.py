import json

import pytest

from parabolic_orbits.cli import cli_dispatch


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "2", "3", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "infinite" and obj["witness"] == [2, 3, 2]


def test_form(capsys):
    code, out, _ = run(capsys, "form", "2", "3", "2")
    obj = json.loads(out)
    assert code == 0 and obj["psd"] is True
    assert obj["radical"] == [[1, 1, 1, 1, 1, 1, 1]]


def test_orbits_and_seed_recorded(capsys):
    code, out, _ = run(capsys, "orbits", "1", "1", "1", "--d", "1,1,1", "--p", "2", "--seed", "9")
    obj = json.loads(out)
    assert code == 0 and obj["orbit_count"] == 5 and obj["seed"] == 9
    code, out, _ = run(capsys, "orbits", "1", "1", "1", "--d", "1,1,1", "--p", "3", "--method", "both")
    assert code == 0 and json.loads(out)["orbit_count"] == json.loads(out)["bfs_orbit_count"] == 5


def test_output_independent_of_threads(capsys, tmp_path):
    outs = []
    for threads in ("1", "4"):
        target = tmp_path / f"degen{threads}.json"
        code, _, _ = run(capsys, "degen", "1", "1", "1", "--d", "1,1,1", "--p", "2", "--threads", threads, "--output", str(target))
        assert code == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ("quiver", "1", "2", "1", "--dot"),
        ("arquiver", "1", "1", "1", "--bound", "2,2,2", "--p", "2", "--dot"),
        ("degen", "1", "1", "1", "--d", "1,1,1", "--p", "2", "--dot"),
    ],
)
def test_dot_outputs(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.startswith("digraph") and out.rstrip().endswith("}")


def test_other_subcommands(capsys, tmp_path):
    code, out, _ = run(capsys, "dims", "2", "3", "2", "--d", "1,1,1,1,1,1,1")
    assert code == 0 and json.loads(out)["dimP_mod_Qu"] == 12
    code, out, _ = run(capsys, "indecs", "1", "1", "1", "--bound", "1,1,1", "--p", "2")
    assert code == 0 and len(json.loads(out)["indecomposables"]) == 7
    code, out, _ = run(capsys, "embed", "1", "1", "1", "--into", "2", "1", "1", "--d", "1,1,1", "--p", "2", "--code", "5")
    obj = json.loads(out)
    assert code == 0 and obj["zero_positions"] == [2] and obj["delta_dim"] == [1, 0, 1, 1]
    module_file = tmp_path / "m.json"
    module_file.write_text(json.dumps(obj["module"]))
    code, out, _ = run(capsys, "embed", "2", "1", "1", "--into", "2", "2", "1", "--module", str(module_file))
    assert code == 0


def test_exit_codes(capsys):
    code, _, err = run(capsys, "classify", "1", "1")
    assert code == 2 and json.loads(err)["error"] == "UsageError"
    code, _, err = run(capsys, "classify", "0", "1", "1")
    assert code == 2
    code, _, err = run(capsys, "orbits", "2", "3", "2", "--d", "1,1,1,1,1,1,1", "--p", "3")
    assert code == 3 and json.loads(err)["required"] == 3**16
    code, _, err = run(capsys, "arquiver", "1", "1", "1", "--bound", "1,1,1", "--p", "2")
    assert code == 3 and json.loads(err)["error"] == "NotStabilized"
    code, _, _ = run(capsys, "classify", "1", "1", "1", "--format", "dot")
    assert code == 2
    code, _, _ = run(capsys, "orbits", "1", "1", "1", "--d", "1,1,1", "--p", "4")
    assert code == 2


def test_json_is_byte_identical(capsys):
    a = run(capsys, "indecs", "1", "2", "1", "--bound", "1,1,1,1", "--p", "3")[1]
    b = run(capsys, "indecs", "1", "2", "1", "--bound", "1,1,1,1", "--p", "3")[1]
    assert a == b
