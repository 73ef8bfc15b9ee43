import io
import json
import subprocess
import sys

import jsonschema
import pytest

from coalform.cli import main
from coalform.schemas import schema_for

UNIFORM_LUNCH = {
    "A": {"A,B|C|D": "1/3", "A,C|B|D": "1/3", "A,D|B|C": "1/3"},
    "B": {"A,B|C|D": "1/3", "A|B,C|D": "1/3", "A|B,D|C": "1/3"},
    "C": {"A,C|B|D": "1/3", "A|B,C|D": "1/3", "A|B|C,D": "1/3"},
    "D": {"A,D|B|C": "1/3", "A|B,D|C": "1/3", "A|B|C,D": "1/3"},
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def lunch_candidate(tmp_path):
    path = tmp_path / "uniform.json"
    path.write_text(json.dumps(UNIFORM_LUNCH))
    return str(path)


def test_partitions_dinner_k2():
    code, out, _ = run("partitions", "--fixture", "dinner", "--k", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 11 and lines[-1] == "count: 10"


def test_partitions_bos_k1():
    code, out, _ = run("partitions", "--fixture", "bos", "--k", "1")
    assert (code, out) == (0, "1|2\ncount: 1\n")


@pytest.mark.parametrize("argv", [
    ["partitions", "--fixture", "dinner", "--k", "0"],
    ["partitions", "--fixture", "dinner", "--spec", "x.json"],
    ["partitions"],
    ["solve", "--fixture", "bos", "--epsilon", "one"],
    ["solve", "--fixture", "bos", "--reduce", "maybe"],
    ["cooperate", "--fixture", "dinner", "--k", "2", "--coalition", "A,,C1"],
    ["cooperate", "--fixture", "dinner", "--k", "2", "--coalition", "A,Z"],
    ["simulate", "--fixture", "lunch", "--k", "2", "--steps", "0"],
    ["solve", "--spec", "/nonexistent/game.json"],
    ["fixture"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_bad_spec_file_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"format_version": 1, "players": ["a"], "payoffs": [{"partition": "b", "payoff": [1]}]}')
    code, _, err = run("solve", "--spec", str(path))
    assert code == 2 and "$.payoffs[0].partition" in err


def test_resource_cap_exit_3():
    assert run("solve", "--fixture", "lunch", "--k", "4", "--reduce", "false", "--cap", "100")[0] == 3


def test_non_equilibrium_candidate_exit_4(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"A": {"A,B|C1|C2": 1}, "B": {"A,B|C1|C2": 1},
                                "C1": {"A,B|C1,C2": 1}, "C2": {"A,B|C1|C2": 1}}))
    code, out, err = run("cooperate", "--fixture", "dinner", "--k", "2", "--coalition", "A,B",
                         "--candidate", str(path))
    assert code == 4 and "max regret 2" in err
    assert "ex post 2  false" in out


def test_unique_base_is_auto_selected():
    # no documented k=1 profile for dinner; the all-alone game has one equilibrium
    code, out, _ = run("stability", "--fixture", "dinner", "--k0", "1")
    assert code == 0 and "K* =" in out


def test_ambiguous_base_from_spec_file(tmp_path):
    code, out, _ = run("fixture", "staghare")
    path = tmp_path / "sh.json"
    path.write_text(out)
    code, _, err = run("stability", "--spec", str(path), "--k0", "2")
    assert code == 4 and "[1]" in err and "--select" in err
    code, out, _ = run("stability", "--spec", str(path), "--k0", "2", "--select", "1")
    assert code == 0 and "K* = 2" in out


def test_solve_staghare_both_outcomes():
    code, out, _ = run("solve", "--fixture", "staghare", "--k", "2")
    assert code == 0 and "(100,100)" in out and "(8,8)" in out


def test_solve_lunch_candidate_verified(lunch_candidate):
    code, out, _ = run("solve", "--fixture", "lunch", "--k", "2", "--candidate", lunch_candidate,
                       "--format", "json")
    data = json.loads(out)
    assert code == 0
    [entry] = data["mixed_equilibria"]
    assert entry["max_regret"] == 0 and entry["payoff"] == ["137/27"] * 4


def test_coop_theory_dinner():
    code, out, _ = run("coop-theory", "--fixture", "dinner")
    assert code == 0 and "core: empty" in out and "verified=True" in out


def test_coop_theory_too_many_players_exit_3(tmp_path):
    players = [f"p{i}" for i in range(7)]
    path = tmp_path / "big.json"
    path.write_text(json.dumps({"format_version": 1, "players": players,
                                "payoffs": [{"partition": "*", "payoff": [1] * 7}]}))
    code, out, err = run("coop-theory", "--spec", str(path))
    assert code == 3 and "at most 6" in err


COMMANDS = [
    ["partitions", "--fixture", "lunch", "--k", "2"],
    ["solve", "--fixture", "dinner", "--k", "2", "--eliminate-dominated"],
    ["solve", "--fixture", "bos", "--epsilon", "1/10", "--k", "2"],
    ["cooperate", "--fixture", "dinner", "--k", "2", "--coalition", "C1,C2"],
    ["stability", "--fixture", "staghare", "--k0", "1", "--policy", "exists"],
    ["simulate", "--fixture", "lunch", "--k", "2", "--steps", "300", "--seed", "9"],
    ["coop-theory", "--fixture", "staghare", "--convention", "pessimistic"],
    ["fixture", "bos", "--epsilon", "1"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_json_output_validates_and_is_deterministic(argv):
    first = run(*argv, "--format", "json") if argv[0] != "fixture" else run(*argv)
    second = run(*argv, "--format", "json") if argv[0] != "fixture" else run(*argv)
    assert first[0] == 0 and first == second
    data = json.loads(first[1])
    jsonschema.validate(data, schema_for(data))


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coalform.cli", "partitions", "--fixture", "bos", "--k", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("count: 2\n")
