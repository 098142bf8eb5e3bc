"""
Rendering of polynomials, generating functions, check reports and timings.
"""

import json
import logging
from fractions import Fraction
from typing import Iterable, List

import pandas as pd

from app.core.errors import UsageError
from app.core.genfun import TX, RatFun
from app.core.polyring import Poly, as_rational

logger = logging.getLogger(__name__)


def render_poly(p: Poly) -> str:
    """Expanded text form, descending in every variable (``x^3 + 13*x^2 + 26*x + 1``)."""
    return str(p)


def _inner_text(c) -> str:
    return str(c).replace(" ", "")


def render_collected(p: Poly) -> str:
    """
    A polynomial in t over Q[x] collected by ascending powers of t.

    Coefficients with several terms go in parentheses, and a coefficient
    whose terms are all negative is pulled out with a minus sign:
    ``1 - (x+2)*t + t^2``.
    """
    if len(p.gens) != 2:
        return render_poly(p)
    var = p.var
    parts = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        terms = list(c.terms())
        negative = all(v < 0 for _, v in terms) and (k > 0 or len(terms) == 1)
        magnitude = -c if negative else c
        power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not power:
            body = _inner_text(magnitude)
        elif magnitude == 1:
            body = power
        elif len(terms) > 1:
            body = f"({_inner_text(magnitude)})*{power}"
        else:
            body = f"{_inner_text(magnitude)}*{power}"
        parts.append(("-" if negative else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _rational_text(value) -> str:
    return str(as_rational(value))


def poly_to_json(p: Poly) -> dict:
    """``{"t_coeffs": [[coefficient string per x-power], ...]}`` for a polynomial in t over Q[x]."""
    return {"t_coeffs": [[_rational_text(v) for v in c.coeffs] for c in p.coeffs]}


def poly_from_json(obj: dict, gens=TX) -> Poly:
    try:
        rows = obj["t_coeffs"]
        return Poly([Poly([as_rational(Fraction(v)) for v in row], gens[1:]) for row in rows], gens)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed polynomial record: {e}") from e


def ratfun_to_json(s: int, F: RatFun) -> dict:
    return {"s": s, "numerator": poly_to_json(F.numerator), "denominator": poly_to_json(F.denominator)}


def ratfun_from_json(obj: dict) -> RatFun:
    """Inverse of ``ratfun_to_json``; the stored pair is already canonical."""
    if "numerator" not in obj or "denominator" not in obj:
        raise UsageError("record needs numerator and denominator")
    return RatFun(poly_from_json(obj["numerator"]), poly_from_json(obj["denominator"]))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def render_ratfun(s: int, F: RatFun) -> str:
    return f"N_{s} = {render_collected(F.numerator)}\nD_{s} = {render_collected(F.denominator)}"


def report_to_json(report) -> dict:
    return {
        "name": report.name,
        "params": report.params,
        "status": "pass" if report.passed else "fail",
        "counterexample": report.counterexample,
        "details": {k: (v if isinstance(v, (int, float, str, bool)) else str(v)) for k, v in report.details.items()},
    }


def reports_to_json(reports: Iterable) -> List[dict]:
    return [report_to_json(r) for r in sorted(reports, key=lambda r: r.sort_key)]


def _params_text(params: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in params.items())


def render_reports(reports: Iterable) -> str:
    """One line per report, the counterexample indented below a failure, then a summary."""
    reports = sorted(reports, key=lambda r: r.sort_key)
    lines = []
    for r in reports:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({_params_text(r.params)})")
        if not r.passed:
            ce = r.counterexample
            lines.append(f"    at {_params_text(ce['params'])}")
            lines.append(f"    lhs: {ce['lhs']}")
            lines.append(f"    rhs: {ce['rhs']}")
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines)


TIMING_COLUMNS = ["s", "seconds", "deg_t_D", "deg_x_D", "deg_t_N", "deg_x_N"]


def timings_frame(rows: Iterable[dict]) -> pd.DataFrame:
    """Bench rows as a DataFrame with a fixed column order."""
    frame = pd.DataFrame(list(rows), columns=TIMING_COLUMNS)
    if not frame.empty:
        frame["seconds"] = frame["seconds"].round(4)
    return frame


def timings_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False)


def timings_table(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False)
