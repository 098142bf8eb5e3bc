import json
from fractions import Fraction

import pytest

from app.core.errors import UsageError
from app.core.genfun import compute_Fs
from app.core.polyring import Poly, bipoly
from app.utils.formatting import (
    dumps,
    poly_from_json,
    poly_to_json,
    ratfun_from_json,
    ratfun_to_json,
    render_collected,
    render_poly,
    render_ratfun,
    render_reports,
    reports_to_json,
    timings_csv,
    timings_frame,
)
from app.verify.checks import CheckReport


def test_render_poly():
    assert render_poly(Poly([1, 26, 13, 1], ("x",))) == "x^3 + 13*x^2 + 26*x + 1"


@pytest.mark.parametrize(
    "rows, text",
    [
        ([[1], [-2, -1], [1]], "1 - (x+2)*t + t^2"),
        ([[1], [-1]], "1 - t"),
        ([[0, 1], [0, -3], [-4, 1]], "x - 3*x*t + (x-4)*t^2"),
        ([[], [], [2]], "2*t^2"),
        ([[-1, 1]], "x-1"),
        ([[-1, -1], [1]], "-x-1 + t"),
        ([], "0"),
    ],
)
def test_render_collected(rows, text):
    assert render_collected(bipoly(rows)) == text


def test_render_F1():
    assert render_ratfun(1, compute_Fs(1)) == "N_1 = 1 - t\nD_1 = 1 - (x+2)*t + t^2"


def test_json_schema_for_F2():
    obj = ratfun_to_json(2, compute_Fs(2))
    assert obj["s"] == 2
    assert obj["numerator"]["t_coeffs"] == [["1"], ["-3"], ["3"], ["-1"]]
    assert obj["denominator"]["t_coeffs"][0] == ["1"]
    assert obj["denominator"]["t_coeffs"][1] == ["-4", "-1"]


def test_json_round_trip_reproduces_rendering():
    F = compute_Fs(3)
    text = dumps(ratfun_to_json(3, F))
    back = ratfun_from_json(json.loads(text))
    assert render_ratfun(3, back) == render_ratfun(3, F)
    assert dumps(ratfun_to_json(3, back)) == text


def test_poly_json_handles_zero_and_fractions():
    zero = Poly([], ("t", "x"))
    assert poly_from_json(poly_to_json(zero)) == zero
    half = Poly([Poly([0, Fraction(1, 2)], ("x",))], ("t", "x"))
    assert poly_to_json(half) == {"t_coeffs": [["0", "1/2"]]}
    assert poly_from_json(poly_to_json(half)) == half


def test_malformed_records():
    with pytest.raises(UsageError):
        poly_from_json({"coeffs": []})
    with pytest.raises(UsageError):
        ratfun_from_json({"numerator": {"t_coeffs": []}})


def reports():
    return [
        CheckReport("trace", {"s_max": 2}, True),
        CheckReport("initial", {"s_max": 2}, False, {"params": {"s": 2, "m": 2}, "lhs": "x^2 + 8*x + 1", "rhs": "x^2 + 7*x + 1"}),
    ]


def test_reports_to_json_is_sorted():
    records = reports_to_json(reports())
    assert [r["name"] for r in records] == ["initial", "trace"]
    assert records[0]["status"] == "fail"
    assert records[1]["counterexample"] is None


def test_render_reports():
    text = render_reports(reports())
    assert text.splitlines() == [
        "FAIL initial (s_max=2)",
        "    at s=2, m=2",
        "    lhs: x^2 + 8*x + 1",
        "    rhs: x^2 + 7*x + 1",
        "PASS trace (s_max=2)",
        "2 checks, 1 failed",
    ]


def test_timings_frame_and_csv():
    frame = timings_frame([{"s": 1, "seconds": 0.123456, "deg_t_D": 2, "deg_x_D": 1, "deg_t_N": 1, "deg_x_N": 0}])
    assert list(frame.columns) == ["s", "seconds", "deg_t_D", "deg_x_D", "deg_t_N", "deg_x_N"]
    assert frame["seconds"].iloc[0] == 0.1235
    assert timings_csv(frame).splitlines()[0] == "s,seconds,deg_t_D,deg_x_D,deg_t_N,deg_x_N"
