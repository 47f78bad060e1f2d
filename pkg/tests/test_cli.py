import io
import json
import sys

from treealg.cli import main


def run_cli(argv):
    out = io.StringIO()
    err = io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_compose_example():
    code, out, _ = run_cli(
        ["compose", "--species", "ape", "--outer", "1(2)", "--inner", "3(4)", "--at", "1"]
    )
    assert code == 0
    assert "sum: 3(2,4) + 3(4(2)) + 3(4,2)" in out
    assert "terms: 3" in out


def test_compose_auto_relabel():
    code, out, _ = run_cli(
        ["compose", "--outer", "1(2)", "--inner", "2(3)", "--at", "1"]
    )
    assert code == 0
    assert "relabeled" in out


def test_compose_prelie():
    code, out, _ = run_cli(
        ["compose", "--species", "prelie", "--outer", "1(2)", "--inner", "3(4)", "--at", "1"]
    )
    assert code == 0
    assert "terms: 2" in out


def test_primitives_pinned_output():
    code, out, _ = run_cli(["primitives", "--gens", "1", "--degree", "2"])
    assert code == 0
    assert '["a<a - a>a"]' in out


def test_eval_and_coproduct():
    code, out, _ = run_cli(["eval", "--expr", "{a|b}"])
    assert code == 0 and "value: a<b - b>a" in out
    code, out, _ = run_cli(["coproduct", "--expr", "a>b"])
    assert code == 0 and "a (x) b" in out


def test_verify_suite_exit_codes():
    code, out, _ = run_cli(["verify", "--suite", "brace-relations", "--bound", "3"])
    assert code == 0
    assert "0 defects" in out


def test_parse_error_exit_2():
    code, _, err = run_cli(["eval", "--expr", "a<b>c"])
    assert code == 2 and "parentheses" in err
    code, _, err = run_cli(["compose", "--outer", "1((", "--inner", "2", "--at", "1"])
    assert code == 2


def test_unknown_flag_exit_2():
    code, _, _ = run_cli(["compose", "--wat", "1"])
    assert code == 2


def test_json_output_schema_and_determinism():
    argv = ["--output", "json", "dims", "--gens", "1", "--upto", "3"]
    code1, out1, _ = run_cli(argv)
    code2, out2, _ = run_cli(argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert set(doc) == {"command", "result", "defects"}
    assert doc["command"] == "dims"


def test_output_flag_after_subcommand():
    code, out, _ = run_cli(["eval", "--expr", "1", "--output", "json"])
    assert code == 0
    assert json.loads(out)["result"]["value"] == "1"


def test_envelope_command(tmp_path):
    path = tmp_path / "trivial.json"
    path.write_text(
        json.dumps({"dim": 1, "basis": ["a"], "max_arity": 4, "products": []})
    )
    code, out, _ = run_cli(
        ["--output", "json", "envelope", "--brace", str(path), "--bound", "3"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["dims"] == [1, 1, 1, 1]
    assert doc["result"]["stable"] is True
    assert any("arity-2" in note for note in doc["result"]["notes"])


def test_envelope_invalid_brace(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "dim": 1,
                "basis": ["b"],
                "max_arity": 4,
                "products": [
                    {"root": 0, "args": [0], "value": [{"coeff": "1", "index": 0}]},
                    {"root": 0, "args": [0, 0], "value": [{"coeff": "1", "index": 0}]},
                ],
            }
        )
    )
    code, out, _ = run_cli(["envelope", "--brace", str(path), "--bound", "3"])
    assert code == 1
    assert "defect" in out
