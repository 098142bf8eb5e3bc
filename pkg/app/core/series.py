"""
Truncated power series in t whose coefficients are rationals or polynomials.

This is the machinery behind the Newton-sum conversions: division of
reversed polynomials gives power sums, and ``exp`` of an integral turns
power sums back into a polynomial.
"""

import logging
from fractions import Fraction
from typing import Sequence, Tuple, Union

from app.core.errors import DivisionError, SeriesDomainError
from app.core.polyring import Poly, coerce_into, ring_zero

logger = logging.getLogger(__name__)


class TruncSeries:
    """
    ``c_0 + c_1 t + ... + c_{ord-1} t^(ord-1) + O(t^ord)``.

    ``coeff_gens`` names the coefficient ring: ``()`` for rationals,
    ``("x",)`` for Q[x].
    """

    __slots__ = ("coeffs", "ord", "coeff_gens")

    def __init__(self, coeffs: Sequence, ord: int, coeff_gens: Union[str, Sequence[str]] = ("x",)):
        if ord < 0:
            raise ValueError("truncation order must be non-negative")
        coeff_gens = (coeff_gens,) if isinstance(coeff_gens, str) else tuple(coeff_gens)
        values = [coerce_into(c, coeff_gens) for c in list(coeffs)[:ord]]
        values += [ring_zero(coeff_gens)] * (ord - len(values))
        object.__setattr__(self, "coeffs", tuple(values))
        object.__setattr__(self, "ord", ord)
        object.__setattr__(self, "coeff_gens", coeff_gens)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def from_poly(cls, p: Poly, ord: int) -> "TruncSeries":
        """Series of a polynomial in its main variable."""
        return cls(p.coeffs, ord, p.gens[1:])

    def to_poly(self, var: str = "t") -> Poly:
        return Poly(self.coeffs, (var,) + self.coeff_gens)

    def _zero(self):
        return ring_zero(self.coeff_gens)

    def _check_ring(self, other: "TruncSeries") -> None:
        if other.coeff_gens != self.coeff_gens:
            raise DivisionError(
                f"series over {self.coeff_gens} and {other.coeff_gens} cannot be combined"
            )

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_ring(other)
        n = min(self.ord, other.ord)
        return TruncSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n, self.coeff_gens)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.ord, self.coeff_gens)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.ord, self.coeff_gens, self.coeffs) == (other.ord, other.coeff_gens, other.coeffs)

    def __hash__(self):
        return hash((self.ord, self.coeff_gens, self.coeffs))

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})*t^{k}" for k, c in enumerate(self.coeffs) if c) or "0"
        return f"TruncSeries({shown} + O(t^{self.ord}))"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Product truncated to the smaller order."""
    a._check_ring(b)
    n = min(a.ord, b.ord)
    out = [a._zero()] * n
    for i in range(n):
        ai = a.coeffs[i]
        if not ai:
            continue
        for j in range(n - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return TruncSeries(out, n, a.coeff_gens)


def _invertible_constant(b: TruncSeries):
    if not b.ord:
        raise DivisionError("cannot divide by a series of order 0")
    b0 = b.coeffs[0]
    if isinstance(b0, Poly):
        if not b0 or not b0.is_constant():
            raise DivisionError(f"constant term {b0} is not an invertible rational")
        b0 = b0.constant_value()
    if not b0:
        raise DivisionError("constant term is zero")
    return Fraction(1) / b0


def series_div(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """
    Quotient ``q`` with ``q * b = a mod t^ord``.

    The constant term of ``b`` must be a nonzero rational.
    """
    a._check_ring(b)
    inv = _invertible_constant(b)
    n = min(a.ord, b.ord)
    q = []
    for k in range(n):
        acc = a.coeffs[k]
        for j in range(1, k + 1):
            bj = b.coeffs[j]
            if bj:
                acc = acc - bj * q[k - j]
        q.append(acc * inv)
    return TruncSeries(q, n, a.coeff_gens)


def series_integrate(a: TruncSeries) -> TruncSeries:
    """Term-wise integral with zero constant; the order grows by one."""
    out = [a._zero()] + [c * Fraction(1, k + 1) for k, c in enumerate(a.coeffs)]
    return TruncSeries(out, a.ord + 1, a.coeff_gens)


def series_exp(a: TruncSeries) -> TruncSeries:
    """
    ``exp(a)`` for a series with zero constant term.

    Uses ``k e_k = sum_{j=1..k} j a_j e_{k-j}``.
    """
    if a.ord and a.coeffs[0]:
        raise SeriesDomainError(f"exp needs a zero constant term, got {a.coeffs[0]}")
    e = [coerce_into(1, a.coeff_gens)]
    # j a_j is the coefficient of t^(j-1) in a'
    da = series_derivative(a).coeffs
    for k in range(1, a.ord):
        acc = a._zero()
        for j in range(1, k + 1):
            if da[j - 1]:
                acc = acc + da[j - 1] * e[k - j]
        e.append(acc * Fraction(1, k))
    return TruncSeries(e[: a.ord], a.ord, a.coeff_gens)


def series_derivative(a: TruncSeries) -> TruncSeries:
    """Term-wise derivative; the order drops by one."""
    out = [c * k for k, c in enumerate(a.coeffs)][1:]
    return TruncSeries(out, max(a.ord - 1, 0), a.coeff_gens)


def shift_down(a: TruncSeries, k: int = 1) -> Tuple[list, TruncSeries]:
    """Split off the first ``k`` coefficients and divide the rest by ``t^k``."""
    return list(a.coeffs[:k]), TruncSeries(a.coeffs[k:], max(a.ord - k, 0), a.coeff_gens)
