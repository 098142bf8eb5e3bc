import time
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import pytest

from app.core import genfun
from app.core.errors import DivisionError, UsageError
from app.core.genfun import (
    RatFun,
    characteristic_roots_poly,
    chebyshev_to_F1,
    chebyshev_u,
    closed_form_F1,
    compose_inner,
    compute_Fs,
    compute_Fs_by_hadamard,
    g1_sequence,
    gms_poly,
    h_family,
    hadamard,
    hms_poly,
    series_expand_ratfun,
    unroll_recurrence,
)
from app.core.polyring import Poly
from app.verify.checks import known_closed_form
from conftest import TX, X

t = Poly.gen("t", TX)
xt = Poly.gen("x", TX)

Fs = lru_cache(maxsize=None)(compute_Fs)


def ux(coeffs):
    return Poly(coeffs, X)


def geometric(a):
    return RatFun.reduce(Poly([1], TX), 1 - a * t)


def test_g1_sequence():
    G = g1_sequence(3)
    assert G[0] == 1
    assert G[1] == ux([-1, 1])
    assert G[2] == ux([1, -3, 1])
    assert G[3](1) == 1


@pytest.mark.parametrize(
    "s, m, coeffs",
    [
        (2, 3, [1, 26, 13, 1]),
        (2, 2, [1, 7, 1]),
        (1, 2, [1, 3, 1]),
        (3, 2, [1, 18, 1]),
        (7, 0, [1]),
    ],
)
def test_hms_poly_values(s, m, coeffs):
    assert hms_poly(s, m) == ux(coeffs)


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_gms_methods_agree(s, m):
    assert gms_poly(s, m, method="norm") == gms_poly(s, m, method="sylvester")


def test_gms_poly_rejects_bad_input():
    with pytest.raises(UsageError):
        gms_poly(0, 1)
    with pytest.raises(UsageError):
        gms_poly(2, 1, method="companion")


def test_h_family_with_threads():
    with ThreadPoolExecutor(max_workers=3) as pool:
        threaded = h_family(3, 6, executor=pool)
    assert threaded == h_family(3, 6)
    assert threaded.polys[1] == ux([1, 1])


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_compute_Fs_matches_closed_forms(s):
    assert Fs(s) == known_closed_form(s)


def test_F1_canonical_form():
    F = Fs(1)
    assert F.numerator == 1 - t
    assert F.denominator == (1 - t) ** 2 - xt * t
    assert F.numerator == closed_form_F1().numerator


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_canonical_form_invariants(s):
    F = Fs(s)
    assert F.denominator.coeff(0) == 1
    assert F.is_integral()
    assert F.denominator.degree == 2 ** s
    assert F.numerator.degree == 2 ** s - 1


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_expansion_matches_resultants(s):
    F = Fs(s)
    terms = 2 ** s + 4
    assert series_expand_ratfun(F, terms) == list(h_family(s, terms - 1).polys)


def test_expansion_examples():
    assert series_expand_ratfun(closed_form_F1(), 3) == [ux([1]), ux([1, 1]), ux([1, 3, 1])]
    assert series_expand_ratfun(geometric(1), 4) == [ux([1])] * 4
    assert series_expand_ratfun(Fs(2), 4) == [ux([1]), ux([1, 1]), ux([1, 7, 1]), ux([1, 26, 13, 1])]


def test_unroll_recurrence_needs_invertible_constant():
    F = RatFun(Poly([1], TX), t)
    with pytest.raises(DivisionError):
        unroll_recurrence(F, 3)


def test_characteristic_roots_poly_is_self_reciprocal():
    for s in (1, 2, 3):
        P = characteristic_roots_poly(s)
        assert P.reverse(2 ** s) == P


def test_threads_do_not_change_the_result():
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = compute_Fs(3, pool)
    plain = Fs(3)
    assert threaded.numerator == plain.numerator
    assert threaded.denominator == plain.denominator


def test_compute_Fs_rejects_zero():
    with pytest.raises(UsageError):
        compute_Fs(0)


def test_reduce_removes_common_factors():
    common = 1 + xt * t
    F = RatFun.reduce((1 - t) * common, ((1 - t) ** 2 - xt * t) * common)
    assert F.numerator == 1 - t
    assert F.denominator.coeff(0) == 1


def test_reduce_scales_denominator_constant_to_one():
    F = RatFun.reduce(2 - 2 * t, 2 * (1 - t) ** 2 - 2 * xt * t)
    assert F.numerator == 1 - t


def test_hadamard_of_geometric_series():
    assert hadamard(geometric(2), geometric(3)) == geometric(6)


def test_hadamard_identity_element():
    F1 = closed_form_F1()
    assert hadamard(F1, geometric(1)) == F1


def test_hadamard_rejects_zero_constant_term():
    with pytest.raises(DivisionError):
        hadamard(RatFun(Poly([1], TX), t - t ** 2), geometric(1))


def test_hadamard_denominator_for_s2():
    G = closed_form_F1().substitute_signs(True, True)
    K = hadamard(G, G.substitute_signs(True, False))
    x2 = xt ** 2
    assert K.denominator == 1 + (x2 - 4) * t + (2 * x2 + 6) * t ** 2 + (x2 - 4) * t ** 3 + t ** 4


@pytest.mark.parametrize("s", [1, 2])
def test_hadamard_route_agrees_with_pipeline(s):
    assert compute_Fs_by_hadamard(s) == Fs(s)


def test_hadamard_route_is_limited():
    with pytest.raises(UsageError):
        compute_Fs_by_hadamard(3)


def test_chebyshev_relation():
    U = chebyshev_u(4)
    assert U[2] == ux([-1, 0, 4])
    assert U[4] == ux([1, 0, -12, 0, 16])
    F1 = closed_form_F1()
    minus_4x2 = ux([0, 0, -4])
    expected = RatFun.reduce(compose_inner(F1.numerator, minus_4x2), compose_inner(F1.denominator, minus_4x2))
    assert chebyshev_to_F1() == expected


def test_reduction_stays_univariate(monkeypatch):
    ring_sizes = []
    gcd = genfun.poly_gcd

    def recording(a, b):
        ring_sizes.append(len(a.gens) if isinstance(a, Poly) else 0)
        return gcd(a, b)

    monkeypatch.setattr(genfun, "poly_gcd", recording)
    F = compute_Fs(4)
    assert F == known_closed_form(4)
    assert max(ring_sizes) == 1


def test_reduce_finds_a_factor_shared_at_every_point():
    # 1 - t divides both for every value of x
    F = RatFun.reduce((1 - t) * (1 + xt * t), (1 - t) * (1 - t - xt * t))
    assert F.numerator == 1 + xt * t
    assert F.denominator == 1 - t - xt * t


def test_compute_Fs_up_to_6_is_fast():
    start = time.perf_counter()
    for s in range(1, 7):
        F = compute_Fs(s)
        assert F.denominator.degree == 2 ** s
    assert time.perf_counter() - start < 60


def test_hash_agrees_with_equality():
    F = Fs(2)
    unreduced = RatFun(F.numerator.scale(3) * (1 + t), F.denominator.scale(3) * (1 + t))
    assert unreduced == F
    assert hash(unreduced) == hash(F)
    assert len({F, unreduced, Fs(1)}) == 2
