"""
Exact verification of the identities and empirical facts about H_m^(s) and F_s.

Every check returns a CheckReport. A failing report carries the first
counterexample found, with both sides rendered as text.
"""

import logging
import os
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from app.core.errors import SizeGuardError
from app.core.genfun import (
    TX,
    X,
    RatFun,
    characteristic_polynomial,
    characteristic_roots_poly,
    chebyshev_even_part,
    chebyshev_to_F1,
    chebyshev_u,
    closed_form_F1,
    compose_inner,
    compute_Fs,
    compute_Fs_by_hadamard,
    g1_generating_function,
    g1_sequence,
    hadamard,
    hms_poly,
    series_expand_ratfun,
)
from app.core.newton import from_power_sums, power_sums
from app.core.polyring import Poly
from app.core.resultant import discriminant, resultant

logger = logging.getLogger(__name__)

# Largest 2s + 2m accepted by check_discriminant
DISC_GUARD = int(os.getenv("CHEBYGF_DISC_GUARD", "24"))


@dataclass
class CheckReport:
    """Outcome of one check over a parameter range."""

    name: str
    params: dict
    passed: bool
    counterexample: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError(f"failed check {self.name} needs a counterexample")

    @property
    def sort_key(self) -> Tuple[str, str]:
        return self.name, repr(sorted(self.params.items()))


def _run(name: str, params: dict, cases: Iterable, details: Optional[dict] = None) -> CheckReport:
    """
    Compare ``lhs == rhs`` for every ``(case_params, lhs, rhs)`` until the first failure.
    """
    for case_params, lhs, rhs in cases:
        if lhs != rhs:
            logger.warning(f"{name} failed at {case_params}")
            return CheckReport(
                name,
                params,
                False,
                {"params": case_params, "lhs": str(lhs), "rhs": str(rhs)},
                details or {},
            )
    logger.debug(f"{name} passed over {params}")
    return CheckReport(name, params, True, None, details or {})


def lucas(n: int) -> int:
    """L_n with L_0 = 2, L_1 = 1."""
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def central_binomial(n: int) -> int:
    """B_n = C(n, floor(n/2))."""
    return comb(n, n // 2)


def check_discriminant(s: int, m: int, guard: int = DISC_GUARD) -> CheckReport:
    """
    Disc_y(K_s f_m) = C x^(2s-1) (x + 2^(2s)) H_m^(s)(x)^4 with
    K_s = (1+y)^(2s) + x y^s, f_m = (y^(2m+1) - 1)/(y - 1) and
    C = (-1)^m (2m+1)^(2m-1) s^(2s).
    """
    if s < 1 or m < 1:
        raise SizeGuardError("check_discriminant needs s >= 1 and m >= 1")
    if 2 * s + 2 * m > guard:
        raise SizeGuardError(f"2s + 2m = {2 * s + 2 * m} exceeds the guard {guard}")
    gens = ("y",) + X
    y, x = Poly.gen("y", gens), Poly.gen("x", gens)
    K = (1 + y) ** (2 * s) + x * y ** s
    f = (y ** (2 * m + 1) - 1).exact_div(y - 1)
    delta = discriminant(K * f)
    C = (-1) ** m * (2 * m + 1) ** (2 * m - 1) * s ** (2 * s)
    xx = Poly.gen("x", X)
    rhs = C * xx ** (2 * s - 1) * (xx + 4 ** s) * hms_poly(s, m) ** 4
    return _run("discriminant", {"s": s, "m": m}, [({"s": s, "m": m}, delta, rhs)], {"constant": C})


def check_chebyshev_relation(m_max: int) -> CheckReport:
    """
    U_2m(x) = (-1)^m H_m^(1)(-4x^2), sum U_n t^n (1 - 2xt + t^2) = 1 mod t^m_max,
    and the multisection derivation of F_1.
    """
    U = chebyshev_u(2 * m_max)
    minus_4x2 = Poly([0, 0, -4], X)

    def cases():
        for m in range(m_max + 1):
            H = hms_poly(1, m)
            rhs = H(minus_4x2)
            yield {"m": m}, U[2 * m], (-rhs if m & 1 else rhs)
        x = Poly.gen("x", X)
        product = [U[n] - (2 * x * U[n - 1] if n >= 1 else 0) + (U[n - 2] if n >= 2 else 0)
                   for n in range(m_max)]
        yield {"series_order": m_max}, product, [Poly([1], X)] + [Poly([], X)] * (m_max - 1)
        t, xt = Poly.gen("t", TX), Poly.gen("x", TX)
        even = RatFun.reduce(1 + t ** 2, (1 + t ** 2) ** 2 - 4 * xt ** 2 * t ** 2)
        yield {"identity": "even part"}, chebyshev_even_part(), even
        F1 = closed_form_F1()
        substituted = RatFun.reduce(compose_inner(F1.numerator, minus_4x2), compose_inner(F1.denominator, minus_4x2))
        yield {"identity": "F1(-4x^2, t)"}, chebyshev_to_F1(), substituted

    return _run("chebyshev", {"m_max": m_max}, cases())


def check_fact_initial(s_max: int) -> CheckReport:
    """H_0 = 1, H_1 = x + 1, H_2 = x^2 + L_2s x + 1."""

    def cases():
        for s in range(1, s_max + 1):
            expected = [Poly([1], X), Poly([1, 1], X), Poly([1, lucas(2 * s), 1], X)]
            for m, rhs in enumerate(expected):
                yield {"s": s, "m": m}, hms_poly(s, m), rhs

    return _run("initial", {"s_max": s_max}, cases())


def check_fact_nonneg(s_max: int, m_max: int) -> CheckReport:
    """Every coefficient of H_m^(s) is a non-negative integer."""

    def cases():
        g1 = g1_sequence(m_max)
        for s in range(1, s_max + 1):
            for m in range(m_max + 1):
                H = hms_poly(s, m, g1=g1[m])
                bad = [c for c in H.coeffs if not isinstance(c, int) or c < 0]
                yield {"s": s, "m": m, "poly": str(H)}, bad, []

    return _run("nonneg", {"s_max": s_max, "m_max": m_max}, cases())


def trace_matrix(m: int) -> np.ndarray:
    """The m-by-m 0/1 matrix with a_ij = 1 iff i + j <= m + 1 (1-based)."""
    i, j = np.indices((m, m)) + 1
    return (i + j <= m + 1).astype(object) * 1


def check_trace(s_max: int, m_max: int) -> CheckReport:
    """[x^1] H_m^(s) = trace(M^(2s))."""

    def cases():
        g1 = g1_sequence(m_max)
        for s in range(1, s_max + 1):
            for m in range(1, m_max + 1):
                M = trace_matrix(m)
                power = np.linalg.matrix_power(M, 2 * s)
                yield {"s": s, "m": m}, int(np.trace(power)), hms_poly(s, m, g1=g1[m]).coeff(1)

    return _run("trace", {"s_max": s_max, "m_max": m_max}, cases())


def check_fact_degrees(s_max: int, compute: Callable[[int], RatFun] = compute_Fs) -> CheckReport:
    """deg_t D_s = 2^s, deg_t N_s = 2^s - 1, deg_x D_s = B_(s-1), deg_x N_s = B_(s-1) - 1."""

    def cases():
        for s in range(1, s_max + 1):
            F = compute(s)
            B = central_binomial(s - 1)
            got = (F.denominator.degree, F.numerator.degree,
                   F.denominator.degree_in("x"), F.numerator.degree_in("x"))
            yield {"s": s}, got, (2 ** s, 2 ** s - 1, B, B - 1)

    return _run("degrees", {"s_max": s_max}, cases())


def check_degree_identity(s_max: int) -> CheckReport:
    """sum_{k <= s/2} C(s, k)(s - 2k) = s B_(s-1)."""

    def cases():
        for s in range(1, s_max + 1):
            lhs = sum(comb(s, k) * (s - 2 * k) for k in range(s // 2 + 1))
            yield {"s": s}, lhs, s * central_binomial(s - 1)

    return _run("degree-identity", {"s_max": s_max}, cases())


def _known_denominator_F3(t: Poly, x: Poly) -> Poly:
    return (x ** 2 * t ** 4
            - x * t * (t ** 4 + 14 * t ** 3 + 34 * t ** 2 + 14 * t + 1) * (t - 1) ** 2
            + (t - 1) ** 8)


def known_closed_form(s: int) -> RatFun:
    """The displayed closed forms of F_1 .. F_4."""
    t, x = Poly.gen("t", TX), Poly.gen("x", TX)
    if s == 1:
        return closed_form_F1()
    if s == 2:
        return RatFun.reduce((1 - t) ** 3, (t - 1) ** 4 - x * t * (t + 1) ** 2)
    if s == 3:
        num = (1 - t) * ((t - 1) ** 6 - x * t ** 2 * (t + 3) * (3 * t + 1))
        return RatFun.reduce(num, _known_denominator_F3(t, x))
    if s == 4:
        A = 9 * t ** 6 - 46 * t ** 5 - 89 * t ** 4 - 260 * t ** 3 - 89 * t ** 2 - 46 * t + 9
        B = 11 * t ** 4 + 128 * t ** 3 + 266 * t ** 2 + 128 * t + 11
        C = (2 * t ** 10 - 13 * t ** 9 + 226 * t ** 8 - 300 * t ** 7 - 676 * t ** 6 - 2574 * t ** 5
             - 676 * t ** 4 - 300 * t ** 3 + 226 * t ** 2 - 13 * t + 2)
        D = t ** 6 + 60 * t ** 5 + 519 * t ** 4 + 1016 * t ** 3 + 519 * t ** 2 + 60 * t + 1
        num = (t - 1) * (x ** 2 * t ** 4 * A - 2 * x * t ** 2 * B * (t - 1) ** 6 + (t - 1) ** 14)
        den = (x ** 3 * t ** 5 * (t + 1) ** 2 * (t - 1) ** 4 + x ** 2 * t ** 3 * C
               + x * t * (t - 1) ** 8 * D - (t - 1) ** 16)
        return RatFun.reduce(num, den)
    raise ValueError(f"no closed form recorded for s = {s}")


def check_fs_golden(s_max: int = 4, compute: Callable[[int], RatFun] = compute_Fs) -> CheckReport:
    """compute_Fs(s) against the closed forms, by cross-multiplication."""
    s_max = min(s_max, 4)
    return _run(
        "golden",
        {"s_max": s_max},
        (({"s": s}, compute(s), known_closed_form(s)) for s in range(1, s_max + 1)),
    )


def check_hadamard_s2() -> CheckReport:
    """The s = 2 hand computation: quartic resultant, k_0..k_3, F_2."""

    def cases():
        gens = ("u",) + TX
        u, t, x = Poly.gen("u", gens), Poly.gen("t", gens), Poly.gen("x", gens)
        g1 = (1 + u) ** 2 - x * u
        g2_scaled = (u + t) ** 2 + x * t * u
        tt, xx = Poly.gen("t", TX), Poly.gen("x", TX)
        quartic = (tt - 1) ** 4 + xx ** 2 * tt * (1 + tt) ** 2
        yield {"step": "resultant"}, resultant(g1, g2_scaled), quartic
        expanded = 1 + (xx ** 2 - 4) * tt + (2 * xx ** 2 + 6) * tt ** 2 + (xx ** 2 - 4) * tt ** 3 + tt ** 4
        yield {"step": "expanded quartic"}, quartic, expanded
        G = g1_generating_function()
        K = hadamard(G, G.substitute_signs(True, False))
        yield {"step": "denominator"}, K.denominator, expanded
        k = [Poly(c, X) for c in ([1], [1, 0, -1], [1, 0, -7, 0, 1], [1, 0, -26, 0, 13, 0, -1])]
        yield {"step": "k_0..k_3"}, series_expand_ratfun(K, 4), k
        yield {"step": "F2"}, compute_Fs_by_hadamard(2), known_closed_form(2)

    return _run("hadamard", {"s": 2}, cases())


def check_self_reciprocal(s_max: int) -> CheckReport:
    """rev(P_s, 2^s) = P_s."""
    return _run(
        "self-reciprocal",
        {"s_max": s_max},
        (({"s": s}, P.reverse(2 ** s), P)
         for s, P in ((s, characteristic_roots_poly(s)) for s in range(1, s_max + 1))),
    )


def cs_polynomial(s: int) -> Poly:
    """prod_k (1 - alpha_1^(s-k) alpha_2^k t)^C(s,k), rebuilt from its power sums Q_l(x)^s."""
    N = 2 ** s
    Q = power_sums(characteristic_polynomial(), N)
    return from_power_sums([q ** s for q in Q], N)


def check_cs_degree_bound(s_max: int) -> CheckReport:
    """deg_x C_s <= s B_(s-1); whether the bound is attained goes into the details."""
    attained = {}

    def cases():
        for s in range(1, s_max + 1):
            degree = cs_polynomial(s).degree_in("x")
            bound = s * central_binomial(s - 1)
            attained[s] = degree == bound
            yield {"s": s, "degree": degree, "bound": bound}, degree <= bound, True

    report = _run("cs-bound", {"s_max": s_max}, cases())
    report.details["attained"] = attained
    return report
