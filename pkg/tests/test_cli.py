import json
import shutil

import pytest
from click.testing import CliRunner

from crgkit.cli import main
from crgkit.config import RunConfig
from crgkit.groups import DATA_DIR_ENV, default_data_dir
from crgkit.report import Table


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def rows(result):
    return Table.from_json(result.output).rows


def test_ramification_examples():
    out = run("--exceptional", "G4", "table", "ramification")
    assert out.exit_code == 0
    assert [r[2:] for r in rows(out)] == [[3, 6, 2]]
    out = run("--d", "3", "--e", "1", "--r", "2", "table", "ramification")
    assert sorted(tuple(r[2:]) for r in rows(out)) == [(2, 6, 3), (3, 3, 1)]
    out = run("--d", "1", "--e", "1", "--r", "2", "table", "ramification")
    assert [r[2:] for r in rows(out)] == [[2, 2, 1]]


def test_check_examples():
    out = run("--exceptional", "G25", "check", "exactness")
    assert out.exit_code == 0
    table = Table.from_json(out.output)
    assert table.meta["failed"] == 0
    assert all(r[3] is False for r in table.rows)
    out = run("--exceptional", "G8", "check", "ramification")
    assert out.exit_code == 0
    assert all(d == 1 for _, _, d in Table.from_json(out.output).rows[0][3])
    out = run("--d", "1", "--e", "1", "--r", "3", "check", "kappa")
    assert out.exit_code == 0
    assert {r[0]: r[3] for r in rows(out)} == {"kappa-lcm": 2, "kappa-closed-form": 2}


def test_check_all_passes():
    for args in (["--exceptional", "G13"], ["--d", "2", "--e", "2", "--r", "3"], ["--d", "3", "--e", "3", "--r", "2"]):
        out = run(*args, "check", "all")
        assert out.exit_code == 0, out.output


def test_check_mismatch_exits_one(tmp_path):
    fixtures = tmp_path / "data"
    src = default_data_dir()
    shutil.copytree(src, fixtures)
    # relabel G8 as G4 so its fixture row no longer matches
    obj = json.loads((fixtures / "G8.json").read_text())
    obj["name"] = "G4"
    (fixtures / "G4.json").write_text(json.dumps(obj))
    result = CliRunner().invoke(
        main, ["--exceptional", "G4", "--data-dir", str(fixtures), "check", "ramification"])
    assert result.exit_code == 1
    diff = json.loads(result.stderr)
    assert diff["mismatches"][0]["check"] == "ramification"


def test_build_errors_exit_two(tmp_path):
    assert run("--d", "4", "--e", "4", "--r", "4", "--bound", "100", "group", "info").exit_code == 2
    assert run("--exceptional", "G99", "group", "info").exit_code == 2
    assert run("--exceptional", "G28", "--bound", "100", "hyperplanes").exit_code == 2


def test_usage_errors():
    assert run("group", "info").exit_code == 2
    assert run("--d", "1", "--exceptional", "G4", "group", "info").exit_code == 2
    assert run("--d", "1", "--e", "1", "--r", "2", "stabilizer", "--hyperplane", "7").exit_code == 2
    with pytest.raises(ValueError):
        RunConfig(d=1, e=1, r=1, jobs=0)
    with pytest.raises(ValueError):
        RunConfig(exceptional="G4", bound=0)


def test_group_info():
    out = run("--d", "3", "--e", "1", "--r", "2", "group", "info")
    info = dict(rows(out))
    assert info["order"] == 18 and info["hyperplanes"] == 5 and info["hyperplane classes"] == 2
    assert info["abelianization"] == [6]


def test_stabilizer_and_orbits_by_label():
    out = run("--d", "2", "--e", "1", "--r", "2", "stabilizer", "--hyperplane", "H(1,2,z^0)")
    assert len(rows(out)) == 1 and rows(out)[0][1] == "H(1,2,z^0)"
    out = run("--d", "2", "--e", "1", "--r", "2", "orbits", "--hyperplane", "H(1,2,z^0)")
    got = {(r[0], r[1], tuple(r[2])) for r in rows(out)}
    assert ("N", "non-commuting", ("H2", "H1")) in got
    assert ("C", "commuting", ("H(1,2,z^1)",)) in got
    assert run("--d", "2", "--e", "1", "--r", "2", "orbits", "--hyperplane", "nope").exit_code == 2


@pytest.mark.parametrize("cmd", [["hyperplanes"], ["stabilizer"], ["kappa"], ["table", "ramification"],
                                 ["check", "all"], ["group", "info"]])
def test_deterministic_across_jobs(cmd):
    base = ["--d", "2", "--e", "2", "--r", "3"]
    first = run(*base, *cmd).output
    assert run(*base, *cmd).output == first
    assert run(*base, "--jobs", "4", *cmd).output == first


@pytest.mark.parametrize("cmd", [["stabilizer"], ["kappa"], ["check", "orbits"]])
def test_json_round_trip(cmd):
    out = run("--exceptional", "G6", *cmd).output
    assert Table.from_json(out).to_json() == out


def test_csv_and_markdown():
    out = run("--d", "3", "--e", "1", "--r", "2", "--format", "csv", "table", "ramification").output
    lines = out.splitlines()
    assert lines[0] == "class,representative,e,f,d"
    assert len(lines) == 3
    md = run("--exceptional", "G4", "--format", "md", "table", "ramification").output
    assert "| class | representative | e | f | d |" in md
    assert md.rstrip().endswith("| 3 | 6 | 2 |")


def test_kappa_closed_form_flag():
    out = run("--d", "3", "--e", "1", "--r", "2", "kappa")
    meta = Table.from_json(out.output).meta
    assert meta["kappa"] == 6 and meta["closed_form"] == 3 and meta["closed_form_disagrees"] is True


def test_data_dir_env(tmp_path):
    shutil.copy(default_data_dir() / "G5.json", tmp_path / "G5.json")
    out = run("--exceptional", "G5", "group", "info", env={DATA_DIR_ENV: str(tmp_path)})
    assert out.exit_code == 0
    assert run("--exceptional", "G4", "group", "info", env={DATA_DIR_ENV: str(tmp_path)}).exit_code == 2
