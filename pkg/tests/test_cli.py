import json
import subprocess
import sys

import pytest

from strickland_lab import checks, cli
from strickland_lab.checks import CheckReport

SMALL_GRID = """
[limits]
max_group_order = 1000

[[rank]]
p = 2
k = [1, 2]
d = 2

[[height0]]
A = ["1", "2"]
n = 2

[[fibers]]
m = [2, 3]
h = 1
"""


def run_main(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")], out


def body(reports):
    return [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in reports]


def test_verify_rank(capsys):
    code, reports, _ = run_main(["verify", "rank", "--p", "2", "--k", "2", "--d", "2"], capsys)
    assert code == 0
    (r,) = reports
    assert (r["check"], r["lhs"], r["rhs"], r["pass"]) == ("rank", 7, 7, True)
    assert r["params"] == {"p": 2, "k": 2, "d": 2}
    assert isinstance(r["elapsed_ms"], int)


def test_verify_height0(capsys):
    code, (r,), _ = run_main(["verify", "height0", "--A", "2", "--n", "2"], capsys)
    assert code == 0 and r["pass"] and r["lhs"] == [3, 3]


def test_verify_appendix(capsys):
    code, reports, _ = run_main(["verify", "appendix", "--p", "5", "--n", "1"], capsys)
    assert code == 0
    assert [r["check"] for r in reports] == ["stirling", "appendix"]
    assert reports[1]["lhs"][0] == 1
    code, reports, _ = run_main(["verify", "appendix", "--p", "7"], capsys)
    assert code == 0 and [r["check"] for r in reports] == ["stirling"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "norm", "--A", "4", "--n", "2"],
        ["verify", "diagram", "--A", "2,2", "--h", "2", "--l", "3"],
        ["verify", "centralizers", "--A", "2", "--h", "1", "--n", "3"],
        ["verify", "transfer", "--h", "2", "--n", "4"],
        ["verify", "fibers", "--m", "4", "--h", "1"],
    ],
)
def test_verify_subcommands_pass(argv, capsys):
    code, reports, _ = run_main(argv + ["--serial"], capsys)
    assert code == 0 and all(r["pass"] for r in reports)


def test_table_format(capsys):
    code, _, out = run_main(["verify", "rank", "--p", "3", "--k", "1", "--d", "2", "--format", "table"], capsys)
    assert code == 0
    header, row = out.splitlines()
    assert header.split()[:2] == ["check", "params"]
    assert "PASS" in row and row.startswith("rank")


def test_enumerate_commands(capsys):
    code, rows, _ = run_main(["enumerate", "subgroups", "--G", "4,4", "--order", "4"], capsys)
    assert code == 0 and len(rows) == 7 and all(r["order"] == 4 for r in rows)
    code, rows, _ = run_main(["enumerate", "classes", "--h", "1", "--n", "4", "--p", "2"], capsys)
    assert code == 0 and len(rows) == 4
    assert sum(r["survives_transfer"] for r in rows) == 1
    code, rows, _ = run_main(["enumerate", "components", "--m", "2", "--k", "1", "--h", "2", "--p", "2"], capsys)
    assert code == 0 and len(rows) == 10


def test_config_errors_exit_2(tmp_path, capsys):
    assert cli.main(["verify", "bogus"]) == 2
    assert cli.main(["verify", "rank", "--p", "2"]) == 2
    bad = tmp_path / "bad.toml"
    bad.write_text("[[nosuchcheck]]\nx = 1\n")
    assert cli.main(["verify", "all", "--grid", str(bad)]) == 2
    bad.write_text("this is not = = toml")
    assert cli.main(["verify", "all", "--grid", str(bad)]) == 2
    bad.write_text("[[rank]]\np = 2\n")  # missing parameters
    assert cli.main(["verify", "all", "--grid", str(bad), "--serial"]) == 2
    assert cli.main(["verify", "all", "--grid", str(tmp_path / "missing.toml")]) == 2
    assert cli.main(["verify", "height0", "--A", "0", "--n", "2"]) == 2
    capsys.readouterr()


def test_bad_thread_count_is_a_config_error(tmp_path, monkeypatch, capsys):
    grid = tmp_path / "g.toml"
    grid.write_text(SMALL_GRID)
    monkeypatch.setenv(cli.THREADS_ENV, "many")
    assert cli.main(["verify", "all", "--grid", str(grid)]) == 2
    capsys.readouterr()


def test_resource_bound_exit_3(tmp_path, capsys):
    assert cli.main(["verify", "centralizers", "--A", "3", "--h", "1", "--n", "3"]) == 3
    assert cli.main(["verify", "height0", "--A", "4", "--n", "8"]) == 3
    assert cli.main(["enumerate", "components", "--m", "6", "--k", "6", "--h", "1", "--p", "2"]) == 3
    grid = tmp_path / "g.toml"
    grid.write_text("[limits]\nmax_group_order = 10\n\n[[norm]]\nA = \"2\"\nn = 3\n")
    assert cli.main(["verify", "all", "--grid", str(grid)]) == 3
    capsys.readouterr()


def test_failed_check_exit_1(monkeypatch, capsys):
    def broken(p, k, d):
        return CheckReport("rank", {"p": p, "k": k, "d": d}, 1, 2, False)

    monkeypatch.setitem(checks.CHECKS, "rank", broken)
    code, (r,), _ = run_main(["verify", "rank", "--p", "2", "--k", "1", "--d", "1", "--serial"], capsys)
    assert code == 1 and r["pass"] is False


def test_serial_runs_are_deterministic(tmp_path, capsys):
    grid = tmp_path / "g.toml"
    grid.write_text(SMALL_GRID)
    runs = []
    for _ in range(2):
        code, reports, _ = run_main(["verify", "all", "--grid", str(grid), "--serial"], capsys)
        assert code == 0
        runs.append(body(reports))
    assert runs[0] == runs[1]
    assert len(runs[0]) == 6
    assert [r["check"] for r in runs[0]] == ["rank", "rank", "height0", "height0", "fibers", "fibers"]


def test_pool_matches_serial(tmp_path, monkeypatch, capsys):
    grid = tmp_path / "g.toml"
    grid.write_text(SMALL_GRID)
    _, serial, _ = run_main(["verify", "all", "--grid", str(grid), "--serial"], capsys)
    monkeypatch.setenv(cli.THREADS_ENV, "2")
    code, pooled, _ = run_main(["verify", "all", "--grid", str(grid)], capsys)
    assert code == 0
    key = lambda r: json.dumps(r, sort_keys=True)
    assert sorted(map(key, body(pooled))) == sorted(map(key, body(serial)))


def test_default_grid_mirrors_acceptance():
    tasks, limits = cli.load_grid(None)
    names = {name for name, _ in tasks}
    assert names == {"rank", "centralizers", "transfer", "height0", "norm", "diagram", "fibers", "appendix", "stirling", "components"}
    assert limits["max_group_order"] == 10**6
    rank_points = {(p["p"], p["k"], p["d"]) for n, p in tasks if n == "rank"}
    assert rank_points == {(p, k, d) for p in (2, 3) for k in (1, 2) for d in (1, 2, 3)}
    stirling = [p["p"] for n, p in tasks if n == "stirling"]
    assert stirling == [q for q in range(2, 102) if all(q % d for d in range(2, q))]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "strickland_lab.cli", "verify", "rank", "--p", "2", "--k", "1", "--d", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["lhs"] == 3
