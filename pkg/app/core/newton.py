"""
Conversion between polynomials and the power sums of their roots.
"""

import logging
from typing import List, Sequence

from app.core.errors import DivisionError, InconsistentPowerSumsError, UsageError
from app.core.polyring import Poly, coerce_into
from app.core.series import TruncSeries, series_div, series_exp, series_integrate, shift_down

logger = logging.getLogger(__name__)


def power_sums(p: Poly, ord: int) -> List:
    """
    Power sums ``[p_0, ..., p_ord]`` of the roots of ``p`` in its main variable.

    ``p`` is normalized by its leading coefficient, which must be a nonzero
    rational. The sums are read off the series ``rev(p') / rev(p)``.

    Args:
        p (Poly): polynomial in t over Q or Q[x]
        ord (int): highest power sum index wanted

    Returns:
        list: ``ord + 1`` elements of the coefficient ring; ``p_0 = deg p``
    """
    if ord < 0:
        raise UsageError("power_sums needs ord >= 0")
    if not p:
        raise UsageError("the zero polynomial has no roots to sum")
    lead = p.lc
    if isinstance(lead, Poly):
        if not lead.is_constant():
            raise DivisionError(f"leading coefficient {lead} is not a rational")
        lead = lead.constant_value()
    monic = p.exact_div(lead) if lead != 1 else p
    n = monic.degree
    inner = p.gens[1:]
    if n == 0:
        return [coerce_into(0, inner)] * (ord + 1)
    rev_p = TruncSeries.from_poly(monic.reverse(n), ord + 1)
    rev_dp = TruncSeries.from_poly(monic.diff().reverse(n - 1), ord + 1)
    sums = list(series_div(rev_dp, rev_p).coeffs)
    logger.debug(f"power sums of a degree-{n} polynomial up to index {ord}")
    return sums


def from_power_sums(S: Sequence, n: int, var: str = "t") -> Poly:
    """
    Rebuild ``prod(1 - alpha_i t)`` from the power sums of the ``alpha_i``.

    Computes ``exp(integral((S_0 - S(t)) / t))`` to order ``n + 1``. The caller
    reverses the result to get the monic ``prod(t - alpha_i)``.

    Args:
        S (Sequence): power sums, at least ``n + 1`` of them, ``S[0] == n``
        n (int): number of roots
        var (str): name of the series variable

    Returns:
        Poly: degree-``n`` polynomial in ``var`` with constant term 1
    """
    if n < 0:
        raise UsageError("degree must be non-negative")
    if len(S) < n + 1:
        raise UsageError(f"need {n + 1} power sums, got {len(S)}")
    coeff_gens = next((s.gens for s in S if isinstance(s, Poly)), ())
    (s0,), rest = shift_down(TruncSeries(S[: n + 1], n + 1, coeff_gens))
    if s0 != n:
        raise InconsistentPowerSumsError(f"S_0 = {s0} but the degree is {n}")
    result = series_exp(series_integrate(-rest))
    return result.to_poly(var)
