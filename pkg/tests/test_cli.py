import io
import json
import subprocess
import sys

import pytest

from tkklab.cli import run


def call(*argv, env_tier=None, monkeypatch=None):
    buf = io.StringIO()
    code = run(list(argv), stream=buf)
    lines = [json.loads(x) for x in buf.getvalue().splitlines() if x.startswith("{")]
    return code, lines, buf.getvalue()


def test_verify_tkk_passes():
    code, lines, _ = call("verify", "tkk", "--kind", "hermR", "--n", "3")
    assert code == 0
    assert [x["status"] for x in lines] == ["pass", "pass"]


def test_invalid_n_is_usage_error(capsys):
    code, lines, _ = call("verify", "tkk", "--kind", "hermR", "--n", "0")
    assert code == 2 and lines == []
    assert "unsupported" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["jordan", "info", "--kind", "nope", "--n", "3"],
    ["weights", "check", "--kind", "hermR", "--n", "3", "--weight", "[1,2]", "--a", "1"],
    ["weights", "check", "--kind", "hermR", "--n", "3", "--weight", "[1,2,3]"],
    ["weights", "solve", "--kind", "hermR", "--n", "3", "--bound", "0"],
    ["ueval", "hw", "--kind", "e7", "--weight", "[0,0,0,0,0,-4,2,-2]"],
    ["ueval", "lemma7", "--kind", "spin", "--n", "3"],
    ["tkk"],
])
def test_usage_errors(argv):
    assert run(argv, stream=io.StringIO()) == 2


def test_weight_check_e7():
    code, lines, _ = call("weights", "check", "--kind", "e7", "--weight", "[0,0,0,0,0,-4,2,-2]", "--a", "18")
    assert code == 0
    assert lines[0]["status"] == "pass"


def test_weight_check_failure_exit_code():
    code, lines, _ = call("weights", "check", "--kind", "hermR", "--n", "3",
                          "--weight", "[-1/2,-1/2,-1/2]", "--a", "1", "--hw", "off")
    assert code == 1 and lines[0]["status"] == "fail"


def test_output_is_deterministic_and_sorted():
    argv = ["cartan", "verify", "--kind", "hermC", "--n", "2", "--seed", "3"]
    _, _, a = call(*argv)
    _, _, b = call(*argv)
    assert a == b
    for line in a.splitlines():
        assert line == json.dumps(json.loads(line), sort_keys=True)


def test_tables_markdown():
    code, _, text = call("weights", "tables", "--format", "md")
    assert code == 0 and text.startswith("## ")


def test_hw_command():
    code, lines, _ = call("ueval", "hw", "--kind", "hermR", "--n", "3",
                          "--weight", "[-1/2,-1/2,-3/2]", "--a", "15/16", "--u", "r*e11")
    assert code == 0
    assert lines[0]["scalar_parts"] == {"Q1": "0", "Q2": "0", "Q3": "0", "Q4": "0"}


def test_tier_env_override(monkeypatch):
    monkeypatch.setenv("TKKLAB_TIER", "large")
    from tkklab.cli import build_parser, make_config

    cfg = make_config(build_parser().parse_args(["jordan", "info", "--kind", "hermR", "--n", "2"]))
    assert cfg.tier == "large"


def test_e7_jacobi_small_tier_uses_subset(monkeypatch):
    monkeypatch.delenv("TKKLAB_TIER", raising=False)
    code, lines, _ = call("tkk", "verify", "--kind", "e7", "--samples", "12")
    assert code == 0
    assert lines[0]["details"]["mode"] == "index subset of size 12"


def test_verify_all_parallel_matches_serial():
    _, _, serial = call("verify", "all")
    _, _, par = call("verify", "all", "--jobs", "2")
    assert serial == par
    assert all(json.loads(x)["status"] == "pass" for x in serial.splitlines())


@pytest.mark.parametrize("group,action", [("jordan", "verify"), ("ueval", "lemma7"), ("weights", "solve")])
def test_help_texts(group, action, capsys):
    with pytest.raises(SystemExit):
        from tkklab.cli import build_parser

        build_parser().parse_args([group, action, "--help"])
    assert len(capsys.readouterr().out) > 50


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "tkklab", "jordan", "info", "--kind", "spin", "--n", "2"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["D"] == 3
    assert "\r\n" not in out.stdout
