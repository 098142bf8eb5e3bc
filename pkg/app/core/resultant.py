"""
Resultants and discriminants with respect to the main variable.

Convention: ``Res(f, g) = lc(f)**deg(g) * prod(g(a) for a in roots(f))``,
which is the determinant of the Sylvester matrix with the rows of ``f``
first.
"""

import logging
from typing import List, Sequence, Tuple

from app.core.errors import ResultantDomainError, UsageError
from app.core.polyring import (
    Poly,
    clear_denominators,
    coerce_into,
    exact_quotient,
    ring_zero,
    subresultant_prs,
)

logger = logging.getLogger(__name__)

METHODS = ("bareiss", "prs")


def sylvester_matrix(f: Poly, g: Poly) -> List[list]:
    """Sylvester matrix of two polynomials of positive degree, rows of ``f`` first."""
    n, m = f.degree, g.degree
    size = n + m
    zero = ring_zero(f.gens[1:])
    rows = []
    for shift in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(f.coeffs)):
            row[shift + k] = c
        rows.append(row)
    for shift in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(g.coeffs)):
            row[shift + k] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix: Sequence[Sequence], gens: Tuple[str, ...] = ()):
    """
    Fraction-free determinant over an integral domain.

    Every division is exact by Sylvester's identity, so entries stay in the
    ring of the input (integers, Z[x], Z[x][t], ...).
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    one = coerce_into(1, gens)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not rows[k][k]:
            pivot = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if pivot is None:
                return ring_zero(gens)
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        pivot_row = rows[k]
        akk = pivot_row[k]
        for i in range(k + 1, n):
            row = rows[i]
            aik = row[k]
            for j in range(k + 1, n):
                value = row[j] * akk
                if aik and pivot_row[j]:
                    value = value - aik * pivot_row[j]
                row[j] = value if prev == 1 else exact_quotient(value, prev)
            row[k] = ring_zero(gens)
        prev = akk
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def _trivial_cases(f: Poly, g: Poly):
    inner = f.gens[1:]
    if not f and not g:
        raise ResultantDomainError("resultant of two zero polynomials")
    if not f or not g:
        other = g if not f else f
        if other.degree == 0:
            return coerce_into(1, inner)
        return ring_zero(inner)
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    return None


def resultant(f: Poly, g: Poly, method: str = "bareiss"):
    """
    Resultant of ``f`` and ``g`` in their shared main variable.

    Args:
        f (Poly): first polynomial
        g (Poly): second polynomial over the same generators
        method (str): ``"bareiss"`` (Sylvester determinant over the integers)
            or ``"prs"`` (subresultant remainder sequence)

    Returns:
        element of the coefficient ring (rational, Q[x] or Q[x][t])
    """
    if f.gens != g.gens:
        raise UsageError(f"resultant operands over {f.gens} and {g.gens}")
    if method not in METHODS:
        raise UsageError(f"unknown resultant method {method!r}")
    trivial = _trivial_cases(f, g)
    if trivial is not None:
        return trivial
    inner = f.gens[1:]
    n, m = f.degree, g.degree
    fi, df = clear_denominators(f)
    gi, dg = clear_denominators(g)
    if method == "bareiss":
        res = bareiss_determinant(sylvester_matrix(fi, gi), inner)
    elif n >= m:
        res = _prs_resultant(fi, gi)
    else:
        res = _prs_resultant(gi, fi)
        if (n * m) & 1:
            res = -res
    scale = df ** m * dg ** n
    return res if scale == 1 else exact_quotient(res, scale)


def _prs_resultant(f: Poly, g: Poly):
    R, S = subresultant_prs(f, g)
    if R[-1].degree > 0:
        return ring_zero(f.gens[1:])
    return S[-1]


def multiplication_matrix(q: Poly, s: int, x: str = "x") -> List[list]:
    """
    Matrix of multiplication by ``q(y)`` on Q[x][y]/(y^s - x), basis ``1, y, ..., y^(s-1)``.

    ``q`` is split as ``sum_r y^r A_r(y^s)``; column ``j`` holds the
    coordinates of ``q * y^j``.
    """
    parts = [[] for _ in range(s)]
    for k, c in enumerate(q.coeffs):
        parts[k % s].append(c)
    A = [Poly(coeffs, (x,)) for coeffs in parts]
    xpoly = Poly.gen(x, (x,))
    return [
        [A[i - j] if i >= j else xpoly * A[i - j + s] for j in range(s)]
        for i in range(s)
    ]


def resultant_power_sub(Q: Poly, s: int, method: str = "norm", x: str = "x") -> Poly:
    """
    ``Res_y(y^s - x, Q(y))``, the product of ``Q`` over the s-th roots of x.

    ``method="norm"`` takes the determinant of the s-by-s multiplication
    matrix of ``Q`` modulo ``y^s - x``; ``method="sylvester"`` runs the
    general resultant on the Sylvester matrix.
    """
    if s < 1:
        raise UsageError("s must be a positive integer")
    if len(Q.gens) != 1:
        raise UsageError("resultant_power_sub expects a univariate polynomial")
    if not Q:
        return Poly.zero((x,))
    if method == "sylvester":
        gens = ("y", x)
        f = Poly.monomial(1, s, gens) - Poly.gen(x, gens)
        g = Poly(Q.coeffs, gens)
        return coerce_into(resultant(f, g), (x,))
    if method != "norm":
        raise UsageError(f"unknown method {method!r}")
    qi, den = clear_denominators(Q)
    det = bareiss_determinant(multiplication_matrix(qi, s, x), (x,))
    return det if den == 1 else exact_quotient(det, den ** s)


def discriminant(p: Poly, method: str = "bareiss"):
    """
    ``(-1)**(d(d-1)/2) * Res(p, p') / lc(p)`` for ``d = deg p >= 1``.
    """
    d = p.degree
    if not p or d < 1:
        raise ResultantDomainError("discriminant needs degree at least 1")
    res = resultant(p, p.diff(), method=method)
    value = exact_quotient(res, p.lc)
    return -value if (d * (d - 1) // 2) & 1 else value
