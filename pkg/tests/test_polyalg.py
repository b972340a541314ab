import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hus_lab.exactmath import d_coeff_closed
from hus_lab.polyalg import (
    BernsteinPoly,
    DiskDomain,
    DomainError,
    ExactComplex,
    MonomialPoly,
    chebyshev_bernstein,
    coefficient_bound_check,
    evaluate,
    from_bernstein,
    random_unit_polys,
    sup_norm_disk,
    sup_norm_interval,
    to_bernstein,
)

F = Fraction


def poly(*cs):
    return MonomialPoly(tuple(cs))


def bern(*cs):
    return BernsteinPoly(tuple(cs))


def random_rational_poly(rng, degree):
    return MonomialPoly(tuple(F(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(degree + 1)))


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=50)


# --- conversions ----------------------------------------------------------------


@pytest.mark.parametrize(
    "p,m,expected",
    [
        (poly(1), 2, (1, 2, 1)),
        (poly(1, -8, 8), 2, (1, -6, 1)),
        (poly(0, 1), 2, (0, 1, 1)),
        (poly(1), 1, (1, 1)),
    ],
)
def test_to_bernstein(p, m, expected):
    b = to_bernstein(p, m)
    assert b.coeffs == tuple(F(c) for c in expected)
    assert b.exact


def test_to_bernstein_degree_too_small():
    with pytest.raises(DomainError):
        to_bernstein(poly(0, 0, 0, 1), 2)


def test_to_bernstein_keeps_nominal_degree():
    assert to_bernstein(poly(3, 0, 0)).degree == 2


@pytest.mark.parametrize(
    "b,expected", [(bern(1, 1), (1, 0)), (bern(1, -6, 1), (1, -8, 8))]
)
def test_from_bernstein(b, expected):
    assert from_bernstein(b).coeffs == tuple(F(c) for c in expected)


def test_round_trip_random_rational():
    rng = random.Random(1234)
    for _ in range(1000):
        d = rng.randint(0, 12)
        p = random_rational_poly(rng, d)
        m = d + rng.randint(0, 3)
        b = to_bernstein(p, m)
        back = from_bernstein(b)
        assert back.coeffs[: d + 1] == p.coeffs
        assert all(c == 0 for c in back.coeffs[d + 1:])
        assert to_bernstein(back, m) == b


@given(st.lists(rationals, min_size=1, max_size=9), st.lists(rationals, min_size=1, max_size=9))
def test_lorentz_representation_is_injective(a, b):
    m = max(len(a), len(b)) - 1
    pa, pb = MonomialPoly(tuple(a)), MonomialPoly(tuple(b))
    same_poly = from_bernstein(to_bernstein(pa, m)) == from_bernstein(to_bernstein(pb, m))
    assert (to_bernstein(pa, m) == to_bernstein(pb, m)) == same_poly


def test_float_conversion_matches_exact():
    p = poly(F(1, 3), F(-2, 7), F(5, 2))
    exact = to_bernstein(p, 4)
    approx = to_bernstein(MonomialPoly(tuple(float(c) for c in p.coeffs)), 4)
    assert approx.scalar_format == "float"
    np.testing.assert_allclose(approx.as_float(), exact.as_float(), rtol=1e-15)


def test_complex_coefficients_round_trip():
    p = MonomialPoly((ExactComplex(1, 2), F(1, 3), ExactComplex(0, -1)))
    b = to_bernstein(p, 3)
    assert b.exact and not b.is_real
    assert from_bernstein(b).coeffs == p.coeffs + (F(0),)


# --- Chebyshev in the Lorentz basis --------------------------------------------


def test_chebyshev_bernstein_examples():
    assert chebyshev_bernstein(1).coeffs == (F(-1), F(1))
    assert chebyshev_bernstein(2).coeffs == (F(1), F(-6), F(1))
    assert from_bernstein(chebyshev_bernstein(1)).coeffs == (F(-1), F(2))
    for m in range(1, 10):
        assert evaluate(chebyshev_bernstein(m), 0) == (-1) ** m
        assert evaluate(chebyshev_bernstein(m), 1) == 1


def test_chebyshev_matches_trig_definition():
    for m in (3, 7, 11):
        for x in np.linspace(0, 1, 13):
            assert evaluate(chebyshev_bernstein(m), float(x)) == pytest.approx(
                math.cos(m * math.acos(2 * x - 1)), abs=1e-12
            )


def test_chebyshev_rejects_zero():
    with pytest.raises(DomainError):
        chebyshev_bernstein(0)


# --- evaluation -----------------------------------------------------------------


def test_eval_examples():
    t2 = chebyshev_bernstein(2)
    assert evaluate(t2, 0) == 1
    assert evaluate(t2, F(1, 2)) == -1
    assert evaluate(t2, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert evaluate(bern(1, 2, 1), 0.3 + 0.4j) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(bern(1, 2, 1), ExactComplex(F(3, 10), F(2, 5))) == 1


def test_eval_monomial_exact_and_float():
    p = poly(1, F(1, 2), -3)
    assert evaluate(p, F(2, 3)) == 1 + F(1, 3) - 3 * F(4, 9)
    assert evaluate(p, 2j) == pytest.approx(1 + 1j + 12)


def test_eval_bernstein_agrees_with_monomial_on_complex_points():
    rng = random.Random(7)
    for _ in range(50):
        p = random_rational_poly(rng, 6)
        b = to_bernstein(p, 8)
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        assert evaluate(b, z) == pytest.approx(evaluate(p, z), rel=1e-9, abs=1e-9)
        zq = ExactComplex(F(rng.randint(-9, 9), 4), F(rng.randint(-9, 9), 5))
        assert evaluate(b, zq) == evaluate(p, zq)


# --- sup norms ------------------------------------------------------------------


def brute_interval(p, n=200_001):
    x = np.linspace(0.0, 1.0, n)
    mono = from_bernstein(p) if isinstance(p, BernsteinPoly) else p
    return float(np.max(np.abs(np.polyval(mono.as_float()[::-1], x))))


@pytest.mark.parametrize("m", [1, 2, 5])
def test_interval_norm_chebyshev(m):
    value, x = sup_norm_interval(chebyshev_bernstein(m))
    assert value == pytest.approx(1.0, abs=1e-10)
    assert abs(math.cos(m * math.acos(2 * x - 1))) == pytest.approx(1.0, abs=1e-10)


def test_interval_norm_examples():
    assert sup_norm_interval(poly(7))[0] == 7.0
    value, x = sup_norm_interval(bern(0, 1, 0))
    assert value == pytest.approx(0.25, rel=1e-10)
    assert x == pytest.approx(0.5, abs=1e-6)


def test_interval_norm_against_dense_scan():
    rng = random.Random(99)
    for _ in range(40):
        p = random_rational_poly(rng, rng.randint(1, 12))
        assert sup_norm_interval(p)[0] == pytest.approx(brute_interval(p), rel=1e-8)
        assert sup_norm_interval(p)[0] >= brute_interval(p) * (1 - 1e-12)


def test_interval_norm_rejects_complex():
    with pytest.raises(DomainError):
        sup_norm_interval(MonomialPoly((ExactComplex(0, 1),)))


@pytest.mark.parametrize("k", [0, 1, 3, 6])
def test_disk_norm_monomial(k):
    assert sup_norm_disk(MonomialPoly.monomial(k), DiskDomain(2.0)) == pytest.approx(2.0**k, rel=1e-8)


def test_disk_norm_examples():
    assert sup_norm_disk(poly(-1, 2), 1.0) == pytest.approx(3.0, rel=1e-8)
    assert sup_norm_disk(poly(5), 0.3) == 5.0
    assert sup_norm_disk(chebyshev_bernstein(1), 1.0) == pytest.approx(3.0, rel=1e-8)


def test_disk_norm_against_dense_scan():
    rng = random.Random(5)
    for _ in range(20):
        p = MonomialPoly(tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(rng.randint(2, 9))))
        R = rng.uniform(0.3, 2.5)
        z = R * np.exp(1j * np.linspace(0, 2 * np.pi, 400_001))
        brute = np.max(np.abs(np.polyval(p.as_float()[::-1], z)))
        assert sup_norm_disk(p, R) == pytest.approx(brute, rel=1e-8)


def test_disk_rejects_bad_radius():
    with pytest.raises(DomainError):
        DiskDomain(0.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=2, max_size=8), st.floats(0.1, 3.0), st.floats(0.0, 2.0))
def test_disk_norm_monotone_in_radius(coeffs, r1, dr):
    p = MonomialPoly(tuple(coeffs))
    assert sup_norm_disk(p, r1) <= sup_norm_disk(p, r1 + dr) * (1 + 1e-9) + 1e-15


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=8), st.floats(1.0, 3.0))
def test_interval_norm_below_disk_norm(coeffs, R):
    p = MonomialPoly(tuple(coeffs))
    assert sup_norm_interval(p)[0] <= sup_norm_disk(p, R) * (1 + 1e-9) + 1e-15


# --- coefficient bound -----------------------------------------------------------


def test_random_unit_polys_are_normalized():
    c, _ = random_unit_polys(6, 200, np.random.default_rng(0))
    for row in c[:20]:
        assert sup_norm_interval(BernsteinPoly(tuple(row)))[0] == pytest.approx(1.0, rel=1e-10)


def test_random_unit_polys_seeded():
    a, _ = random_unit_polys(4, 10, np.random.default_rng(3))
    b, _ = random_unit_polys(4, 10, np.random.default_rng(3))
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("m", [1, 2, 5, 9])
def test_coefficient_bound_small_suite(m):
    res = coefficient_bound_check(m, 2000, seed=m)
    assert res.max_ratio <= 1 + 1e-9
    assert res.chebyshev_exact
    assert res.chebyshev_ratio == pytest.approx(1.0, abs=1e-10)
    assert res.passed


def test_chebyshev_equality_case_exact():
    for m in range(1, 16):
        cheb = chebyshev_bernstein(m)
        assert [abs(c) for c in cheb.coeffs] == [d_coeff_closed(m, k) for k in range(m + 1)]
