import json
from types import SimpleNamespace

import pytest

from app.database.db_manager import cache_enabled, close_database, load_generating_function
from app.frontend import cli
from app.frontend.cli import main
from app.utils.formatting import ratfun_from_json, render_ratfun


@pytest.fixture(autouse=True)
def closed_cache():
    yield
    close_database()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fs_pretty(capsys):
    code, out, _ = run(capsys, "fs", "--s", "1", "--format", "pretty")
    assert code == 0
    assert out == "N_1 = 1 - t\nD_1 = 1 - (x+2)*t + t^2\n"


def test_fs_json_round_trips(capsys):
    code, out, _ = run(capsys, "fs", "--s", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["s"] == 2
    assert obj["numerator"]["t_coeffs"] == [["1"], ["-3"], ["3"], ["-1"]]
    code, pretty, _ = run(capsys, "fs", "--s", "2")
    assert render_ratfun(2, ratfun_from_json(obj)) + "\n" == pretty


@pytest.mark.parametrize("s", ["0", "9"])
def test_fs_out_of_range(capsys, s):
    code, out, err = run(capsys, "fs", "--s", s)
    assert code == 2
    assert out == ""
    assert "s must lie in 1..8" in err


def test_max_s_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CHEBYGF_MAX_S", "2")
    code, _, err = run(capsys, "fs", "--s", "3")
    assert code == 2
    assert "1..2" in err


@pytest.mark.parametrize(
    "s, m, text",
    [("2", "3", "x^3 + 13*x^2 + 26*x + 1"), ("7", "0", "1"), ("1", "2", "x^2 + 3*x + 1")],
)
def test_hpoly(capsys, s, m, text):
    code, out, _ = run(capsys, "hpoly", "--s", s, "--m", m)
    assert code == 0
    assert out == text + "\n"


def test_hpoly_sylvester_method(capsys):
    code, out, _ = run(capsys, "hpoly", "--s", "3", "--m", "2", "--method", "sylvester")
    assert code == 0
    assert out == "x^2 + 18*x + 1\n"


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--s", "2", "--terms", "4")
    assert code == 0
    assert out.splitlines() == [
        "H_0 = 1",
        "H_1 = x + 1",
        "H_2 = x^2 + 7*x + 1",
        "H_3 = x^3 + 13*x^2 + 26*x + 1",
    ]


def test_expand_prints_nothing_on_disagreement(capsys, monkeypatch):
    right = cli.h_family(2, 3)
    wrong = SimpleNamespace(polys=right.polys[:3] + (right.polys[3] + 1,))
    monkeypatch.setattr(cli, "h_family", lambda *args, **kwargs: wrong)
    code, out, _ = run(capsys, "expand", "--s", "2", "--terms", "4")
    assert code == 1
    assert out == ""


def test_verify_selected_checks(capsys):
    code, out, _ = run(capsys, "verify", "initial", "trace", "--s-max", "3", "--m-max", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("PASS initial")
    assert lines[1].startswith("PASS trace")
    assert lines[-1] == "2 checks, 0 failed"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "degree-identity", "golden", "--s-max", "3", "--format", "json")
    assert code == 0
    records = json.loads(out)
    assert [r["name"] for r in records] == ["degree-identity", "golden"]
    assert all(r["status"] == "pass" for r in records)


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2
    assert "bogus" in err


def test_bad_arguments_exit_with_usage_code(capsys):
    code, _, _ = run(capsys, "hpoly", "--s", "2")
    assert code == 2
    code, _, _ = run(capsys, "--threads", "0", "hpoly", "--s", "2", "--m", "1")
    assert code == 2


def test_output_does_not_depend_on_threads(capsys):
    _, serial, _ = run(capsys, "fs", "--s", "3", "--format", "json")
    _, threaded, _ = run(capsys, "--threads", "4", "fs", "--s", "3", "--format", "json")
    assert serial == threaded


def test_runs_are_byte_identical(capsys):
    outputs = {run(capsys, "verify", "nonneg", "chebyshev", "--s-max", "2", "--m-max", "3")[1] for _ in range(2)}
    assert len(outputs) == 1


def test_bench_csv(capsys, tmp_path):
    target = tmp_path / "timings.csv"
    code, out, _ = run(capsys, "bench", "--s-max", "2", "--format", "csv", "--output", str(target))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "s,seconds,deg_t_D,deg_x_D,deg_t_N,deg_x_N"
    assert lines[1].startswith("1,") and lines[1].endswith(",2,1,1,0")
    assert lines[2].endswith(",4,1,3,0")
    assert target.read_text().splitlines()[0] == lines[0]


def test_cache_flag(capsys, tmp_path):
    path = str(tmp_path / "fs.sqlite")
    code, first, _ = run(capsys, "--cache-path", path, "fs", "--s", "2")
    assert code == 0
    assert cache_enabled()
    assert load_generating_function(2) is not None
    code, second, _ = run(capsys, "--cache-path", path, "fs", "--s", "2")
    assert first == second
    run(capsys, "--no-cache", "--cache-path", path, "fs", "--s", "2")
    assert not cache_enabled()


def test_logs_stay_off_stdout(capsys):
    code, out, err = run(capsys, "--log-level", "DEBUG", "hpoly", "--s", "2", "--m", "2")
    assert code == 0
    assert out == "x^2 + 7*x + 1\n"
