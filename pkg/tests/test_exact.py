"""Tests for exact polynomial and rational-function arithmetic.

Expected values for the nontrivial cases are produced by independent
oracles implemented here first: a cofactor-expansion determinant and
series expansion by explicit long division.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspzeta.exact import (
    ONE,
    Poly,
    PolyMatrix,
    PowerSeries,
    RatFunc,
    ZERO,
    log_derivative_series,
    poly_det,
    poly_gcd,
    ratfunc_pow,
    ratfunc_reduce,
    rational_from_json,
    rational_to_json,
    series_expand,
)

# --- independent oracles -----------------------------------------------------


def cofactor_det(rows: list[list[Poly]]) -> Poly:
    """Determinant by first-row cofactor expansion; exponential but obvious."""
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    acc = Poly()
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def long_division_series(num: Poly, den: Poly, order: int) -> list[F]:
    """Series of num/den by explicit long division in ascending powers."""
    assert den(F(0)) != 0
    rem = list(num.coeffs) + [F(0)] * (order + 1)
    out = []
    for m in range(order + 1):
        c = rem[m] / den(F(0))
        out.append(c)
        for i, d in enumerate(den.coeffs):
            rem[m + i] -= c * d
    return out


small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
polys = st.lists(small_rationals, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# --- polynomial arithmetic ---------------------------------------------------


def test_poly_product_difference_of_squares():
    assert Poly([1, -1]) * Poly([1, 1]) == Poly([1, 0, -1])


def test_poly_divrem_factorization():
    q, r = divmod(Poly([1, 0, -4]), Poly([1, -2]))
    assert q == Poly([1, 2])
    assert r.is_zero()


def test_poly_addition_cancellation():
    assert Poly([1, 0, -3]) + Poly([0, 0, 3]) == ONE


def test_poly_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(Poly([1, 2]), ZERO)


@given(a=polys, b=nonzero_polys)
def test_divrem_reconstruction(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_poly_eval_and_derivative():
    p = Poly([1, -2, 3])
    assert p(F(1, 2)) == F(3, 4)
    assert p.derivative() == Poly([-2, 6])


# --- gcd ---------------------------------------------------------------------


def test_gcd_common_factor_is_monic():
    a = Poly([1, 0, -4]) * Poly([1, 0, -9])
    assert poly_gcd(a, Poly([1, 0, -4])) == Poly([F(-1, 4), 0, 1])


def test_gcd_coprime():
    assert poly_gcd(Poly([1, -1]), Poly([1, 1])) == ONE


def test_gcd_with_square():
    assert poly_gcd(Poly([1, -2]) ** 2, Poly([1, -2])) == Poly([F(-1, 2), 1])


def test_gcd_both_zero_rejected():
    with pytest.raises(ValueError):
        poly_gcd(ZERO, ZERO)


@given(a=nonzero_polys, b=nonzero_polys, c=nonzero_polys)
@settings(max_examples=40)
def test_gcd_divides_both(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert ((a * c) % g).is_zero()
    assert ((b * c) % g).is_zero()
    # the planted common factor must divide the gcd
    assert (g % c).is_zero()


# --- rational functions ------------------------------------------------------


def test_reduce_cancels_common_factor():
    f = ratfunc_reduce(Poly([1, 0, -4]), Poly([1, 0, -4]) * Poly([1, 0, -9]))
    assert f == RatFunc(ONE, Poly([1, 0, -9]))


def test_reduce_scales_constant_denominator():
    assert ratfunc_reduce(Poly([2, -2]), Poly([2])) == RatFunc(Poly([1, -1]), ONE)


def test_reduce_partial_cancellation():
    num = Poly([1, 0, -1]) * Poly([1, -2])
    den = Poly([1, 0, -1]) * Poly([1, 0, -4])
    assert ratfunc_reduce(num, den) == RatFunc(ONE, Poly([1, 2]))


def test_reduce_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        ratfunc_reduce(ONE, ZERO)


@given(a=nonzero_polys, b=nonzero_polys)
@settings(max_examples=40)
def test_reduce_idempotent_and_canonical(a, b):
    f = ratfunc_reduce(a, b)
    again = ratfunc_reduce(f.num, f.den)
    assert again == f
    if f.den(F(0)) != 0:
        assert f.den(F(0)) == 1
    if not f.num.is_zero():
        assert poly_gcd(f.num, f.den) == ONE


def test_pow_square():
    f = ratfunc_reduce(ONE, Poly([1, -1]))
    assert ratfunc_pow(f, 2) == RatFunc(ONE, Poly([1, -2, 1]))


def test_pow_identity():
    f = ratfunc_reduce(Poly([1, 0, -2]), Poly([1, 0, -4]))
    assert ratfunc_pow(f, 1) == f


def test_pow_keeps_reduced_form():
    f = ratfunc_reduce(Poly([1, 0, -2]), Poly([1, 0, -4]))
    squared = ratfunc_pow(f, 2)
    assert squared.num == Poly([1, 0, -2]) ** 2
    assert squared.den == Poly([1, 0, -4]) ** 2


def test_pow_rejects_nonpositive_exponent():
    with pytest.raises(ValueError):
        ratfunc_pow(RatFunc(ONE, ONE), 0)


# --- determinants ------------------------------------------------------------


def test_det_2x2():
    m = PolyMatrix([[ONE, Poly([0, -2])], [Poly([0, -3]), ONE]])
    assert poly_det(m) == Poly([1, 0, -6])


def test_det_identity_7():
    assert poly_det(PolyMatrix.identity(7)) == ONE


def test_det_random_5x5_matches_cofactor(rng):
    for _ in range(20):
        n = rng.randint(1, 5)
        rows = [
            [
                Poly([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(0, 3))])
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        assert poly_det(PolyMatrix(rows)) == cofactor_det(rows)


def test_det_singular_matrix_is_zero():
    row = [Poly([1, 2]), Poly([0, 1]), Poly([3])]
    m = PolyMatrix([row, row, [ONE, ZERO, ONE]])
    assert poly_det(m).is_zero()


def test_det_zero_pivot_forces_row_swap():
    m = PolyMatrix([[ZERO, ONE], [ONE, ZERO]])
    assert poly_det(m) == Poly([-1])


def test_det_needs_square_matrix():
    with pytest.raises(ValueError):
        PolyMatrix([[ONE, ZERO]])


# --- series ------------------------------------------------------------------


def test_series_geometric():
    f = ratfunc_reduce(ONE, Poly([1, -1]))
    assert series_expand(f, 4).coeffs == (1, 1, 1, 1, 1)


def test_series_even_rational_function():
    f = ratfunc_reduce(Poly([1, 0, -2]), Poly([1, 0, -4]))
    expected = long_division_series(f.num, f.den, 6)
    assert expected == [1, 0, 2, 0, 8, 0, 32]
    assert list(series_expand(f, 6).coeffs) == expected


def test_series_constant_one():
    assert series_expand(RatFunc(ONE, ONE), 3).coeffs == (1, 0, 0, 0)


def test_series_rejects_pole_at_zero():
    with pytest.raises(ZeroDivisionError):
        series_expand(RatFunc(ONE, Poly([0, 1])), 3)


@given(p=polys, q=polys, r=polys, s=polys)
@settings(max_examples=40)
def test_series_multiplicativity(p, q, r, s):
    f = ratfunc_reduce(ONE + Poly([0, 1]) * p, ONE + Poly([0, 1]) * q)
    g = ratfunc_reduce(ONE + Poly([0, 1]) * r, ONE + Poly([0, 1]) * s)
    order = 8
    assert series_expand(f * g, order) == series_expand(f, order) * series_expand(g, order)


# --- logarithmic derivative --------------------------------------------------


def test_log_derivative_geometric():
    f = ratfunc_reduce(ONE, Poly([1, -1]))
    assert log_derivative_series(f, 6).coeffs == (0, 1, 1, 1, 1, 1, 1)


def test_log_derivative_even_example():
    # expanding -2qu^2/(1-qu^2) + 2q^2u^2/(1-q^2u^2) termwise gives
    # coefficient 2(q^(2m) - q^m) at u^(2m); here q = 2
    f = ratfunc_reduce(Poly([1, 0, -2]), Poly([1, 0, -4]))
    series = log_derivative_series(f, 8)
    for m in (1, 2, 3, 4):
        assert series.coeffs[2 * m] == 2 * (2 ** (2 * m) - 2**m)
        assert series.coeffs[2 * m - 1] == 0


def test_log_derivative_of_one_is_zero():
    series = log_derivative_series(RatFunc(ONE, ONE), 5)
    assert all(c == 0 for c in series.coeffs)


def test_log_derivative_requires_value_one_at_zero():
    with pytest.raises(ValueError):
        log_derivative_series(ratfunc_reduce(Poly([2]), ONE), 3)


@given(p=polys, q=polys, r=polys, s=polys)
@settings(max_examples=40)
def test_log_derivative_additivity(p, q, r, s):
    f = ratfunc_reduce(ONE + Poly([0, 1]) * p, ONE + Poly([0, 1]) * q)
    g = ratfunc_reduce(ONE + Poly([0, 1]) * r, ONE + Poly([0, 1]) * s)
    order = 8
    lhs = log_derivative_series(f * g, order)
    rhs = log_derivative_series(f, order) + log_derivative_series(g, order)
    assert lhs == rhs


# --- serialization -----------------------------------------------------------


def test_rational_json_round_trip():
    for x in (F(3), F(-7), F(2, 3), F(-5, 4)):
        assert rational_from_json(rational_to_json(x)) == x
    assert rational_to_json(F(3)) == 3
    assert rational_to_json(F(2, 3)) == "2/3"


def test_rational_json_rejects_floats():
    with pytest.raises(ValueError):
        rational_from_json(0.5)


def test_poly_json_round_trip():
    p = Poly([F(1), F(0), F(-2, 3)])
    assert Poly.from_json(p.to_json()) == p


def test_power_series_requires_consistent_order():
    with pytest.raises(ValueError):
        PowerSeries((F(1),), 3)
