"""
Generating functions of the polynomial families H_m^(s)(x).

H_m^(s) is the monic polynomial whose roots are ``-4^s cos^(2s)(k pi/(2m+1))``
for ``k = 1..m``. G_m^(s)(x) = (-1)^m H_m^(s)(-x) has the s-th powers of the
roots of G_m^(1) as roots, and G_m^(1) satisfies a second-order recurrence
with constant coefficients. ``compute_Fs`` turns that into the rational
function F_s(x, t) = sum_m H_m^(s)(x) t^m.
"""

import logging
import time
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import gcd, lcm
from typing import Callable, List, Optional, Tuple

from app.core.errors import DivisionError, PipelineAssertionError, UsageError
from app.core.newton import from_power_sums, power_sums
from app.core.polyring import (
    Poly,
    as_rational,
    coerce_into,
    poly_gcd,
    substitute_signs,
)
from app.core.resultant import resultant, resultant_power_sub
from app.core.series import TruncSeries, series_mul

logger = logging.getLogger(__name__)

X = ("x",)
TX = ("t", "x")

GMS_METHODS = ("norm", "sylvester")


def _map(executor: Optional[Executor], fn: Callable, items) -> list:
    # executor.map keeps submission order, so results do not depend on scheduling
    if executor is None:
        return [fn(item) for item in items]
    return list(executor.map(fn, items))


def _is_unit(p) -> bool:
    return not isinstance(p, Poly) or p.is_constant()


def _common_factor(num: Poly, den: Poly, points: int = 8):
    """gcd of numerator and denominator in (Q[x])[t]."""
    if len(num.gens) != 2:
        return poly_gcd(num, den)
    # x = 0 is skipped: F_s(0, t) = 1/(1 - t), so N_s(0, t) and D_s(0, t) always share a factor
    tried = []
    x0 = 1
    while len(tried) < points:
        if num.lc(x0) and den.lc(x0):
            tried.append(x0)
            # a gcd of positive t-degree survives specialization at x0
            if poly_gcd(num.evaluate_inner(x0), den.evaluate_inner(x0)).degree == 0:
                return poly_gcd(num.content(), den.content())
        x0 = -x0 if x0 > 0 else 1 - x0
    logger.debug(f"specializations at x in {tried} all share a factor, running the full gcd")
    return poly_gcd(num, den)


def _joint_scale(num: Poly, den: Poly) -> Fraction:
    values = [Fraction(v) for _, v in num.terms()] + [Fraction(v) for _, v in den.terms()]
    scale = Fraction(gcd(*(v.numerator for v in values)), lcm(*(v.denominator for v in values)))
    first = min(den.terms())[1]
    return -scale if first < 0 else scale


@dataclass(frozen=True, eq=False)
class RatFun:
    """
    Reduced quotient ``numerator / denominator`` of polynomials in t over Q[x].

    Build instances with ``RatFun.reduce``: common factors are removed and
    the denominator is scaled so its constant term in t is 1. When that
    constant term is not a rational the pair is scaled to integer content 1
    instead.
    """

    numerator: Poly
    denominator: Poly

    @classmethod
    def reduce(cls, numerator: Poly, denominator: Poly) -> "RatFun":
        if not denominator:
            raise DivisionError("zero denominator")
        if numerator.gens != denominator.gens:
            raise UsageError(f"numerator over {numerator.gens}, denominator over {denominator.gens}")
        if not numerator:
            return cls(numerator, coerce_into(1, denominator.gens))
        g = _common_factor(numerator, denominator)
        if not _is_unit(g):
            numerator, denominator = numerator.exact_div(g), denominator.exact_div(g)
        c0 = denominator.coeff(0)
        if c0 and _is_unit(c0):
            c0 = c0.constant_value() if isinstance(c0, Poly) else c0
            scale = Fraction(c0)
        else:
            scale = _joint_scale(numerator, denominator)
        scale = as_rational(scale)
        if scale != 1:
            numerator, denominator = numerator.exact_div(scale), denominator.exact_div(scale)
        return cls(numerator, denominator)

    @property
    def gens(self) -> Tuple[str, ...]:
        return self.denominator.gens

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        # equal functions may be stored unreduced, so hash the canonical pair
        canonical = RatFun.reduce(self.numerator, self.denominator)
        return hash((canonical.numerator, canonical.denominator))

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun.reduce(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def scale(self, factor) -> "RatFun":
        return RatFun.reduce(self.numerator * factor, self.denominator)

    def substitute_signs(self, flip_x: bool, flip_t: bool) -> "RatFun":
        return RatFun.reduce(
            substitute_signs(self.numerator, flip_x, flip_t),
            substitute_signs(self.denominator, flip_x, flip_t),
        )

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for p in (self.numerator, self.denominator) for _, v in p.terms())

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


@dataclass(frozen=True)
class HFamily:
    """H_0^(s), ..., H_M^(s)."""

    s: int
    polys: Tuple[Poly, ...]


def characteristic_polynomial() -> Poly:
    """``t^2 + (2 - x) t + 1``, the characteristic polynomial of G_m^(1)."""
    return Poly([1, Poly([2, -1], X), 1], TX)


def g1_sequence(m_max: int) -> List[Poly]:
    """G_0^(1), ..., G_{m_max}^(1) from ``G_{m+2} = (x - 2) G_{m+1} - G_m``."""
    if m_max < 0:
        raise UsageError("m_max must be non-negative")
    step = Poly([-2, 1], X)
    seq = [Poly([1], X), Poly([-1, 1], X)]
    while len(seq) <= m_max:
        seq.append(step * seq[-1] - seq[-2])
    return seq[: m_max + 1]


def gms_poly(s: int, m: int, method: str = "norm", g1: Optional[Poly] = None) -> Poly:
    """
    G_m^(s)(x) = Res_y(G_m^(1)(y), x - y^s).

    ``method="sylvester"`` evaluates that resultant directly. ``method="norm"``
    uses the equivalent ``(-1)^(m(s+1)) Res_y(y^s - x, G_m^(1)(y))``, a
    determinant of size s.
    """
    if s < 1 or m < 0:
        raise UsageError(f"gms_poly needs s >= 1 and m >= 0, got s={s}, m={m}")
    G = g1 if g1 is not None else g1_sequence(m)[m]
    if method == "norm":
        value = resultant_power_sub(G, s)
        if (m * (s + 1)) & 1:
            value = -value
    elif method == "sylvester":
        gens = ("y",) + X
        f = Poly(G.coeffs, gens)
        g = Poly.gen("x", gens) - Poly.monomial(1, s, gens)
        value = coerce_into(resultant(f, g), X)
    else:
        raise UsageError(f"unknown method {method!r}")
    if value.degree != m or value.lc != 1:
        raise PipelineAssertionError(f"G_{m}^({s}) is not monic of degree {m}: {value}")
    return value


def hms_poly(s: int, m: int, method: str = "norm", g1: Optional[Poly] = None) -> Poly:
    """H_m^(s)(x) = (-1)^m G_m^(s)(-x)."""
    G = gms_poly(s, m, method=method, g1=g1).flip("x")
    return -G if m & 1 else G


def h_family(s: int, m_max: int, method: str = "norm", executor: Optional[Executor] = None) -> HFamily:
    g1 = g1_sequence(m_max)
    polys = _map(executor, lambda m: hms_poly(s, m, method=method, g1=g1[m]), range(m_max + 1))
    return HFamily(s, tuple(polys))


def unroll_recurrence(F: RatFun, ord: int) -> List[Poly]:
    """
    First ``ord`` coefficients of F through its recurrence.

    With ``D(x, 0) = 1``: ``a_m = N_m - sum_{i>=1} D_i a_{m-i}``.
    """
    den = F.denominator
    c0 = den.coeff(0)
    if not c0 or not _is_unit(c0):
        raise DivisionError(f"constant term {c0} of the denominator is not an invertible rational")
    inv = Fraction(1) / (c0.constant_value() if isinstance(c0, Poly) else c0)
    inner = den.gens[1:]
    out = []
    for m in range(ord):
        acc = F.numerator.coeff(m)
        for i in range(1, min(m, den.degree) + 1):
            di = den.coeffs[i]
            if di:
                acc = acc - di * out[m - i]
        out.append(coerce_into(acc * inv if inv != 1 else acc, inner))
    return out


def series_expand_ratfun(F: RatFun, ord: int) -> List[Poly]:
    """Coefficients of t^0 .. t^(ord-1) of F."""
    return unroll_recurrence(F, ord)


def hadamard(u: RatFun, v: RatFun, ord: Optional[int] = None) -> RatFun:
    """
    Term-wise product of two rational series.

    The characteristic roots of the result are the pairwise products of
    those of the inputs: with ``p``, ``q`` the reciprocals of the two
    denominators, the new characteristic polynomial is
    ``Res_u(p(u), u^deg(q) q(t/u))``. The numerator comes from the first
    ``ord`` terms of the product series times the new denominator.
    """
    du, dv = u.denominator.degree, v.denominator.degree
    for F in (u, v):
        if not F.denominator.coeff(0):
            raise DivisionError("denominator with zero constant term")
    if du < 1 or dv < 1:
        raise UsageError("hadamard needs denominators of positive degree in t")
    gens = ("u",) + TX
    p = Poly(u.denominator.reverse(du).coeffs, gens)
    t = Poly.gen("t", TX)
    q_rev = v.denominator.reverse(dv)
    q = Poly([t ** (dv - k) * q_rev.coeff(dv - k) for k in range(dv + 1)], gens)
    char = coerce_into(resultant(p, q), TX)
    size = du * dv
    den = char.reverse(size)
    if ord is None:
        excess = max(0, u.numerator.degree - du + 1, v.numerator.degree - dv + 1)
        ord = size + excess
    terms = [a * b for a, b in zip(series_expand_ratfun(u, ord), series_expand_ratfun(v, ord))]
    num = series_mul(TruncSeries.from_poly(den, ord), TruncSeries(terms, ord, TX[1:])).to_poly("t")
    return RatFun.reduce(num, den)


def _halve_exponents(p: Poly, var: str, sign: int = 1) -> Poly:
    """Replace ``var^(2k)`` by ``(sign*var)^k``; odd powers of ``var`` must be absent."""
    index = p.gens.index(var)
    terms = []
    for exps, value in p.terms():
        e = exps[index]
        if e & 1:
            raise PipelineAssertionError(f"{p} has an odd power of {var}")
        half = e // 2
        new = exps[:index] + (half,) + exps[index + 1:]
        terms.append((new, value * sign ** half))
    return Poly.from_terms(terms, p.gens)


def compose_inner(p: Poly, value: Poly) -> Poly:
    """Substitute ``x -> value`` in every coefficient of a polynomial in t over Q[x]."""
    return p.map_coeffs(lambda c: c(value))


def characteristic_roots_poly(s: int, executor: Optional[Executor] = None) -> Poly:
    """
    The self-reciprocal polynomial, built from power sums and norms, whose
    roots are the products ``alpha_{i1}(x) alpha_{i2}(eps x) ... alpha_{is}(eps^(s-1) x)``,
    written in the variable x standing for x^s.
    """
    if s < 1:
        raise UsageError("s must be a positive integer")
    N = 2 ** s
    start = time.perf_counter()
    Q = power_sums(characteristic_polynomial(), N)
    logger.debug(f"s={s}: power sums Q_0..Q_{N} in {time.perf_counter() - start:.3f}s")
    start = time.perf_counter()
    T = _map(executor, partial(resultant_power_sub, s=s), Q)
    logger.debug(f"s={s}: resultants T_0..T_{N} in {time.perf_counter() - start:.3f}s")
    start = time.perf_counter()
    P = from_power_sums(T, N)
    logger.debug(f"s={s}: recovered P of degree {P.degree} in {time.perf_counter() - start:.3f}s")
    if P.reverse(N) != P:
        raise PipelineAssertionError(f"P_{s} is not self-reciprocal")
    return P


def compute_Fs(s: int, executor: Optional[Executor] = None) -> RatFun:
    """
    F_s(x, t) = sum_m H_m^(s)(x) t^m as a reduced rational function.

    Args:
        s (int): positive integer
        executor (Executor, optional): pool for the independent resultants

    Returns:
        RatFun: canonical N_s / D_s with D_s(x, 0) = 1 and integer coefficients
    """
    if s < 1:
        raise UsageError("s must be a positive integer")
    N = 2 ** s
    total = time.perf_counter()
    P = characteristic_roots_poly(s, executor)
    D = substitute_signs(P, True, bool(s & 1))
    start = time.perf_counter()
    g1 = g1_sequence(N - 1)
    H = _map(executor, lambda m: hms_poly(s, m, g1=g1[m]), range(N))
    logger.debug(f"s={s}: H_0..H_{N - 1} in {time.perf_counter() - start:.3f}s")
    num = series_mul(TruncSeries.from_poly(D, N), TruncSeries(H, N, X)).to_poly("t")
    if num.degree > N - 1:
        raise PipelineAssertionError(f"numerator of degree {num.degree} exceeds {N - 1}")
    start = time.perf_counter()
    F = RatFun.reduce(num, D)
    logger.debug(f"s={s}: reduced in {time.perf_counter() - start:.3f}s")
    if F.denominator.degree > N or F.numerator.degree > N - 1:
        raise PipelineAssertionError(f"F_{s} exceeds the degree bounds")
    if F.denominator.coeff(0) != 1 or not F.is_integral():
        raise PipelineAssertionError(f"F_{s} is not integral with D(x, 0) = 1")
    if F.denominator.degree < N:
        logger.warning(f"s={s}: denominator degree dropped to {F.denominator.degree} < {N}")
    logger.info(f"computed F_{s} in {time.perf_counter() - total:.3f}s")
    return F


def closed_form_F1() -> RatFun:
    """(1 - t) / ((1 - t)^2 - x t)."""
    t, x = Poly.gen("t", TX), Poly.gen("x", TX)
    return RatFun.reduce(1 - t, (1 - t) ** 2 - x * t)


def g1_generating_function() -> RatFun:
    """sum_m G_m^(1)(x) t^m = F_1(-x, -t)."""
    return closed_form_F1().substitute_signs(True, True)


def compute_Fs_by_hadamard(s: int) -> RatFun:
    """
    F_1 and F_2 through explicit Hadamard products.

    For s = 2 the Hadamard product of the series of G_m^(1)(x) and
    G_m^(1)(-x) is the series of k_m(x) = H_m^(2)(-x^2); substituting
    x^2 -> -x gives F_2.
    """
    G = g1_generating_function()
    if s == 1:
        return G.substitute_signs(True, True)
    if s != 2:
        raise UsageError("the Hadamard construction is only implemented for s = 1 and s = 2")
    K = hadamard(G, G.substitute_signs(True, False))
    return RatFun.reduce(
        _halve_exponents(K.numerator, "x", -1),
        _halve_exponents(K.denominator, "x", -1),
    )


def chebyshev_u(n_max: int) -> List[Poly]:
    """U_0, ..., U_{n_max} from ``U_{n+1} = 2x U_n - U_{n-1}``."""
    two_x = Poly([0, 2], X)
    seq = [Poly([1], X), two_x]
    while len(seq) <= n_max:
        seq.append(two_x * seq[-1] - seq[-2])
    return seq[: n_max + 1]


def chebyshev_even_part() -> RatFun:
    """sum_m U_2m(x) t^(2m), as half the sum of U(x, t) and U(x, -t)."""
    t, x = Poly.gen("t", TX), Poly.gen("x", TX)
    U = RatFun.reduce(Poly([1], TX), 1 - 2 * x * t + t ** 2)
    return (U + U.substitute_signs(False, True)).scale(Fraction(1, 2))


def chebyshev_to_F1() -> RatFun:
    """
    sum_m U_2m(x) (-t)^m, i.e. the even part with t^2 -> -t.

    Equals F_1(-4x^2, t).
    """
    even = chebyshev_even_part()
    return RatFun.reduce(
        _halve_exponents(even.numerator, "t", -1),
        _halve_exponents(even.denominator, "t", -1),
    )
