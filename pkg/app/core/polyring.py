"""
Exact rational arithmetic and dense recursive polynomials.

A ``Poly`` is a dense polynomial in its main variable ``gens[0]`` whose
coefficients live in the ring named by ``gens[1:]``: plain rationals when
``gens`` has one entry, ``Poly`` objects over ``gens[1:]`` otherwise. So a
univariate polynomial in x has ``gens == ("x",)`` and a polynomial in t with
coefficients in Q[x] has ``gens == ("t", "x")``.

Rationals are Python ints when integral and ``fractions.Fraction`` otherwise,
so integer-heavy computations stay on the fast int path.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence, Tuple, Union

from app.core.errors import DegreeBoundError, DivisionError, VariableMismatchError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

# Degree of the zero polynomial.
NEG_INFINITY = float("-inf")


def as_rational(value) -> Rational:
    """Normalize an int or Fraction: integral values come back as int."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"not a rational: {value!r}")


def exact_quotient(a, b):
    """Exact quotient ``a / b`` of two ring elements (rationals or polynomials)."""
    if isinstance(a, Poly):
        return a.exact_div(b)
    if isinstance(b, Poly):
        if not b.is_constant():
            raise DivisionError(f"cannot divide rational {a} by {b}")
        b = b.constant_value()
    if not b:
        raise DivisionError("division by zero")
    return as_rational(Fraction(a) / b)


def ring_zero(gens: Tuple[str, ...]):
    return 0 if not gens else Poly._raw([], gens)


def coerce_into(value, gens: Tuple[str, ...]):
    """Embed ``value`` into the ring with generators ``gens``."""
    if not gens:
        if isinstance(value, Poly):
            if value.is_constant():
                return value.constant_value()
            raise VariableMismatchError(f"{value} is not a rational constant")
        return as_rational(value)
    if isinstance(value, Poly):
        if value.gens == gens:
            return value
        depth = len(value.gens)
        if depth < len(gens) and gens[-depth:] == value.gens:
            return Poly._raw([coerce_into(value, gens[1:])] if value else [], gens)
        raise VariableMismatchError(f"cannot embed a polynomial over {value.gens} into {gens}")
    if isinstance(value, (int, Fraction)):
        if not value:
            return Poly._raw([], gens)
        return Poly._raw([coerce_into(value, gens[1:])], gens)
    raise TypeError(f"cannot coerce {value!r} into a polynomial ring")


class Poly:
    """Immutable dense polynomial over Q or over a smaller polynomial ring."""

    __slots__ = ("coeffs", "gens")

    def __init__(self, coeffs: Sequence = (), gens: Union[str, Sequence[str]] = ("x",)):
        gens = (gens,) if isinstance(gens, str) else tuple(gens)
        if not gens:
            raise VariableMismatchError("a polynomial needs at least one variable")
        inner = gens[1:]
        coeffs = [coerce_into(c, inner) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "gens", gens)

    @classmethod
    def _raw(cls, coeffs: list, gens: Tuple[str, ...]) -> "Poly":
        # coefficients are trusted to already live in the ring over gens[1:]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if len(gens) == 1:
            coeffs = [c.numerator if c.denominator == 1 else c for c in coeffs]
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "gens", gens)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, gens: Union[str, Sequence[str]] = ("x",)) -> "Poly":
        return cls((), gens)

    @classmethod
    def const(cls, value, gens: Union[str, Sequence[str]] = ("x",)) -> "Poly":
        gens = (gens,) if isinstance(gens, str) else tuple(gens)
        return coerce_into(value, gens)

    @classmethod
    def gen(cls, var: str, gens: Union[str, Sequence[str]]) -> "Poly":
        """The generator ``var`` as an element of the ring over ``gens``."""
        gens = (gens,) if isinstance(gens, str) else tuple(gens)
        if var not in gens:
            raise VariableMismatchError(f"{var} is not one of {gens}")
        index = gens.index(var)
        inner = gens[index:]
        value = cls._raw([ring_zero(inner[1:]), coerce_into(1, inner[1:])], inner)
        return coerce_into(value, gens)

    @classmethod
    def from_terms(cls, terms, gens: Union[str, Sequence[str]]) -> "Poly":
        """Build a polynomial from ``(exponents, coefficient)`` pairs; repeated exponents add up."""
        gens = (gens,) if isinstance(gens, str) else tuple(gens)
        if len(gens) == 1:
            dense = {}
            for (k,), value in terms:
                dense[k] = dense.get(k, 0) + value
            size = max(dense, default=-1) + 1
            return cls([dense.get(k, 0) for k in range(size)], gens)
        grouped = {}
        for exps, value in terms:
            grouped.setdefault(exps[0], []).append((exps[1:], value))
        size = max(grouped, default=-1) + 1
        inner = gens[1:]
        return cls._raw(
            [cls.from_terms(grouped[k], inner) if k in grouped else ring_zero(inner) for k in range(size)],
            gens,
        )

    @classmethod
    def monomial(cls, coeff, degree: int, gens: Union[str, Sequence[str]]) -> "Poly":
        """``coeff * gens[0]**degree``."""
        gens = (gens,) if isinstance(gens, str) else tuple(gens)
        inner = gens[1:]
        return cls._raw([ring_zero(inner)] * degree + [coerce_into(coeff, inner)], gens)

    # -- basic properties -----------------------------------------------------

    @property
    def var(self) -> str:
        return self.gens[0]

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def lc(self):
        """Leading coefficient in the main variable (zero for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else ring_zero(self.gens[1:])

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ring_zero(self.gens[1:])

    def is_constant(self) -> bool:
        """True when the polynomial is a rational constant in every variable."""
        if len(self.coeffs) > 1:
            return False
        if not self.coeffs:
            return True
        c = self.coeffs[0]
        return c.is_constant() if isinstance(c, Poly) else True

    def constant_value(self) -> Rational:
        """The rational value of a constant polynomial."""
        if not self.is_constant():
            raise DivisionError(f"{self} is not a rational constant")
        if not self.coeffs:
            return 0
        c = self.coeffs[0]
        return c.constant_value() if isinstance(c, Poly) else c

    def degree_in(self, var: str):
        """Degree in any of the generators."""
        if var == self.var:
            return self.degree
        if var not in self.gens:
            return 0 if self else NEG_INFINITY
        return max((c.degree_in(var) for c in self.coeffs if c), default=NEG_INFINITY)

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], Rational]]:
        """Nonzero terms as ``(exponents, coefficient)``, exponents ordered like ``gens``."""
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if isinstance(c, Poly):
                for exps, value in c.terms():
                    yield (k,) + exps, value
            else:
                yield (k,), c

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic -----------------------------------------------------------

    def _operand(self, other):
        """Coerce ``other`` into this ring, or NotImplemented if it lives above it."""
        if isinstance(other, Poly):
            if other.gens == self.gens:
                return other
            if len(other.gens) > len(self.gens):
                if other.gens[-len(self.gens):] == self.gens:
                    return NotImplemented
                raise VariableMismatchError(f"variables {self.gens} and {other.gens} do not match")
            return coerce_into(other, self.gens)
        if isinstance(other, (int, Fraction)):
            return coerce_into(other, self.gens)
        return NotImplemented

    def _below(self, other) -> bool:
        """True when ``other`` lives in a ring built on top of this one."""
        return (
            isinstance(other, Poly)
            and len(other.gens) > len(self.gens)
            and other.gens[-len(self.gens):] == self.gens
        )

    def __add__(self, other):
        if self._below(other):
            return coerce_into(self, other.gens) + other
        other = self._operand(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.gens)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.gens)

    def __sub__(self, other):
        if self._below(other):
            return coerce_into(self, other.gens) - other
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor) -> "Poly":
        """Multiply by an element of the coefficient ring (or any smaller ring)."""
        if not factor:
            return Poly._raw([], self.gens)
        return Poly._raw([c * factor for c in self.coeffs], self.gens)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly) and len(other.gens) < len(self.gens):
            return self.scale(coerce_into(other, self.gens[1:]))
        if self._below(other):
            return other.scale(coerce_into(self, other.gens[1:]))
        other = self._operand(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([], self.gens)
        out = [ring_zero(self.gens[1:])] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.gens)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = coerce_into(1, self.gens)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by ``var**k``."""
        if not self.coeffs or k == 0:
            return self
        return Poly._raw([ring_zero(self.gens[1:])] * k + list(self.coeffs), self.gens)

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.gens == self.gens:
                return self.coeffs == other.coeffs
            if len(other.gens) == len(self.gens):
                return False
            if len(other.gens) > len(self.gens):
                return other.__eq__(self)
        elif not isinstance(other, (int, Fraction)):
            return NotImplemented
        try:
            return self.coeffs == coerce_into(other, self.gens).coeffs
        except VariableMismatchError:
            return False

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.gens, self.coeffs))

    # -- division -------------------------------------------------------------

    def exact_div(self, other) -> "Poly":
        """Exact quotient; raises DivisionError when a remainder is left."""
        if isinstance(other, Poly) and len(other.gens) >= len(self.gens):
            other = self._operand(other)
            if other is NotImplemented:
                raise DivisionError(f"cannot divide {self} by a polynomial over a larger ring")
        elif isinstance(other, (int, Fraction, Poly)):
            divisor = coerce_into(other, self.gens[1:])
            return Poly._raw([exact_quotient(c, divisor) for c in self.coeffs], self.gens)
        else:
            raise TypeError(f"cannot divide by {other!r}")
        if not other:
            raise DivisionError("division by the zero polynomial")
        if other.degree == 0:
            return self.exact_div(other.coeffs[0])
        rem = list(self.coeffs)
        db = other.degree
        lc_b = other.lc
        if len(rem) <= db:
            if rem:
                raise DivisionError(f"{other} does not divide {self}")
            return Poly._raw([], self.gens)
        quot = [ring_zero(self.gens[1:])] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = exact_quotient(c, lc_b)
            quot[k - db] = q
            for j, bj in enumerate(other.coeffs):
                if bj:
                    rem[k - db + j] = rem[k - db + j] - q * bj
        if any(rem[:db]):
            raise DivisionError(f"{other} does not divide {self}")
        return Poly._raw(quot, self.gens)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        """Euclidean division; only defined over Q (one generator)."""
        if len(self.gens) != 1:
            raise DivisionError("Euclidean division needs coefficients in a field")
        other = self._operand(other)
        if not other:
            raise DivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        db = other.degree
        inv = Fraction(1) / other.lc
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            q = rem[k] * inv
            if not q:
                continue
            quot[k - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] -= q * bj
        return Poly._raw(quot, self.gens), Poly._raw(rem[:db], self.gens)

    def pseudo_remainder(self, other: "Poly") -> "Poly":
        """``lc(other)**(deg self - deg other + 1) * self`` reduced modulo ``other``."""
        other = self._operand(other)
        if not other:
            raise DivisionError("pseudo-remainder by the zero polynomial")
        df, dg = self.degree, other.degree
        if df < dg:
            return self
        lc_g = other.lc
        steps = df - dg + 1
        r = self
        while r and r.degree >= dg:
            j = r.degree - dg
            r = r.scale(lc_g) - other.scale(r.lc).shift(j)
            steps -= 1
        return r.scale(lc_g ** steps) if steps else r

    # -- structure ------------------------------------------------------------

    def reverse(self, n: int = None) -> "Poly":
        """``var**n * p(1/var)``; ``n`` defaults to the degree."""
        if n is None:
            n = max(len(self.coeffs) - 1, 0)
        if len(self.coeffs) - 1 > n:
            raise DegreeBoundError(f"reverse window {n} is below degree {self.degree}")
        padded = list(self.coeffs) + [ring_zero(self.gens[1:])] * (n + 1 - len(self.coeffs))
        return Poly._raw(padded[::-1], self.gens)

    def diff(self, var: str = None) -> "Poly":
        """Formal derivative with respect to ``var`` (main variable by default)."""
        var = var or self.var
        if var == self.var:
            return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:], self.gens)
        if var in self.gens:
            return Poly._raw([c.diff(var) for c in self.coeffs], self.gens)
        return Poly._raw([], self.gens)

    def flip(self, var: str) -> "Poly":
        """Substitute ``var -> -var``."""
        if var == self.var:
            return Poly._raw([-c if k & 1 else c for k, c in enumerate(self.coeffs)], self.gens)
        if var in self.gens:
            return Poly._raw([c.flip(var) for c in self.coeffs], self.gens)
        return self

    def map_coeffs(self, fn) -> "Poly":
        return Poly(tuple(fn(c) for c in self.coeffs), self.gens)

    def __call__(self, value):
        """Horner evaluation of the main variable."""
        acc = ring_zero(self.gens[1:])
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if isinstance(acc, Poly) or len(self.gens) > 1:
            return acc
        return as_rational(acc)

    def evaluate_inner(self, value) -> "Poly":
        """Evaluate the innermost variable at ``value``; drops that generator."""
        if len(self.gens) == 1:
            raise VariableMismatchError("no inner variable to evaluate")
        if len(self.gens) == 2:
            return Poly._raw([c(value) for c in self.coeffs], self.gens[:1])
        return Poly._raw([c.evaluate_inner(value) for c in self.coeffs], self.gens[:-1])

    def content(self):
        """gcd of the coefficients in the coefficient ring (a rational over Q)."""
        if len(self.gens) == 1:
            nums = [Fraction(c).numerator for c in self.coeffs]
            dens = [Fraction(c).denominator for c in self.coeffs]
            if not nums:
                return 0
            return as_rational(Fraction(gcd(*nums), lcm(*dens)))
        result = ring_zero(self.gens[1:])
        for c in self.coeffs:
            result = poly_gcd(result, c)
        return result

    def primitive_part(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.exact_div(self.content())

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.exact_div(self.lc)

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        terms = sorted(self.terms(), reverse=True)
        if not terms:
            return "0"
        parts = []
        for exps, value in terms:
            monomial = "*".join(
                var if e == 1 else f"{var}^{e}" for var, e in zip(self.gens, exps) if e
            )
            magnitude = abs(value)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            elif isinstance(magnitude, Fraction):
                body = f"({magnitude})*{monomial}"
            else:
                body = f"{magnitude}*{monomial}"
            sign = "-" if value < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self}, gens={self.gens})"


# Type names used across the code base: a UniPoly is a Poly with one generator, a BiPoly a
# Poly in t whose coefficients are UniPoly in x.
UniPoly = Poly
BiPoly = Poly


def unipoly(coeffs: Sequence, var: str = "x") -> Poly:
    """Univariate polynomial from ascending coefficients."""
    return Poly(coeffs, (var,))


def bipoly(t_coeffs: Sequence, var: str = "t", inner: str = "x") -> Poly:
    """Polynomial in ``var`` from ascending coefficients that are UniPolys (or rows of rationals)."""
    rows = [c if isinstance(c, (Poly, int, Fraction)) else Poly(c, (inner,)) for c in t_coeffs]
    return Poly(rows, (var, inner))


def _check_same(a: Poly, b: Poly) -> None:
    if a.gens != b.gens:
        raise VariableMismatchError(f"variables {a.gens} and {b.gens} do not match")


def poly_add(a: Poly, b: Poly) -> Poly:
    _check_same(a, b)
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    _check_same(a, b)
    return a * b


def poly_reverse(p: Poly, n: int) -> Poly:
    return p.reverse(n)


def poly_derivative(p: Poly, var: str = None) -> Poly:
    return p.diff(var)


def poly_eval(p: Poly, v) -> Rational:
    if len(p.gens) != 1:
        raise VariableMismatchError("poly_eval expects a univariate polynomial")
    return p(v)


def bipoly_eval(p: Poly, x0, t0) -> Rational:
    """Evaluate a polynomial in t over Q[x] at ``(x0, t0)``."""
    return p.evaluate_inner(x0)(t0)


def substitute_signs(p: Poly, flip_x: bool, flip_t: bool, x: str = "x", t: str = "t") -> Poly:
    """``x -> -x`` and/or ``t -> -t``."""
    if flip_x:
        p = p.flip(x)
    if flip_t:
        p = p.flip(t)
    return p


def integer_normalize(p: Poly) -> Tuple[Poly, Rational]:
    """
    Split ``p`` as ``c * q`` with ``q`` primitive over the integers.

    The sign of ``c`` makes the first nonzero coefficient of ``q`` (lowest
    main degree, then lowest inner degrees) positive.

    Returns:
        tuple: ``(q, c)``; the zero polynomial gives ``(0, 1)``
    """
    terms = sorted(p.terms())
    if not terms:
        return p, 1
    values = [Fraction(v) for _, v in terms]
    scale = Fraction(gcd(*(v.numerator for v in values)), lcm(*(v.denominator for v in values)))
    if terms[0][1] < 0:
        scale = -scale
    scale = as_rational(scale)
    return p.exact_div(scale), scale


def clear_denominators(p: Poly) -> Tuple[Poly, int]:
    """``(d * p, d)`` with ``d`` the lcm of all coefficient denominators."""
    den = lcm(*(Fraction(v).denominator for _, v in p.terms())) if p else 1
    return (p * den if den != 1 else p), den


def subresultant_prs(f: Poly, g: Poly) -> Tuple[list, list]:
    """
    Subresultant polynomial remainder sequence of ``f`` and ``g``.

    ``deg f >= deg g`` is required. All divisions are exact in the
    coefficient ring.

    Returns:
        tuple: ``(R, S)`` with the remainder sequence ``R`` and the scalar
        subresultants ``S``; ``S[-1]`` is the resultant when ``R[-1]`` is a
        nonzero constant in the main variable
    """
    _check_same(f, g)
    if f.degree < g.degree:
        raise DegreeBoundError("subresultant_prs expects deg f >= deg g")
    one = coerce_into(1, f.gens[1:])
    if not f:
        return [], []
    if not g:
        return [f], [one]
    R = [f, g]
    d = f.degree - g.degree
    h = f.pseudo_remainder(g)
    if (d + 1) & 1:
        h = -h
    lc_g = g.lc
    c = lc_g ** d
    S = [one, c]
    c = -c
    m = g.degree
    while h:
        k = h.degree
        R.append(h)
        f, g, d, m = g, h, m - k, k
        b = -lc_g * c ** d
        h = f.pseudo_remainder(g).exact_div(b)
        lc_g = g.lc
        if d > 1:
            c = exact_quotient((-lc_g) ** d, c ** (d - 1))
        else:
            c = -lc_g
        S.append(-c)
    return R, S


def poly_gcd(a, b):
    """
    Greatest common divisor.

    Over Q (rationals or one generator) the result is monic; over polynomial
    coefficient rings it is the product of the content gcd and the primitive
    part of the last subresultant, normalized by ``integer_normalize``.
    """
    if not isinstance(a, Poly) and not isinstance(b, Poly):
        return 1 if (a or b) else 0
    if not isinstance(a, Poly):
        a = coerce_into(a, b.gens)
    if not isinstance(b, Poly):
        b = coerce_into(b, a.gens)
    _check_same(a, b)
    if not a:
        return b.monic() if len(b.gens) == 1 else _normalized(b)
    if not b:
        return a.monic() if len(a.gens) == 1 else _normalized(a)
    if len(a.gens) == 1:
        b = b.monic()
        while b:
            a, b = b, a.divmod(b)[1].monic()
        return a.monic()
    cont = poly_gcd(a.content(), b.content())
    pa, pb = a.primitive_part(), b.primitive_part()
    if pa.degree < pb.degree:
        pa, pb = pb, pa
    R, _ = subresultant_prs(pa, pb)
    g = R[-1].primitive_part()
    return _normalized(g.scale(cont))


def _normalized(p: Poly) -> Poly:
    q, _ = integer_normalize(p)
    return q
