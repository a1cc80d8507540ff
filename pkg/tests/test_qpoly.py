from fractions import Fraction

import pytest

from k3moonshine.qpoly import (
    Poly, PoleAtZeroError, RationalFunction, cyclotomic_poly,
    reconstruct_rational,
)


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == Poly([-1, 1])
    assert cyclotomic_poly(2) == Poly([1, 1])
    assert cyclotomic_poly(6) == Poly([1, -1, 1])
    assert cyclotomic_poly(23) == Poly([1] * 23)
    # Phi_105 famously has a coefficient -2
    assert -2 in cyclotomic_poly(105).c
    # product over divisors reconstitutes t^n - 1
    prod = Poly([1])
    for d in (1, 2, 3, 6):
        prod = prod * cyclotomic_poly(d)
    assert prod == Poly([-1, 0, 0, 0, 0, 0, 1])


def test_poly_divmod_gcd():
    a = Poly([2, 0, -4, 6])
    b = Poly([1, 1])
    q, r = a.divmod(b)
    assert q * b + r == a
    g = (Poly([1, 1]) * Poly([2, 1])).gcd(Poly([1, 1]) * Poly([3, 1]))
    assert g == Poly([1, 1])


def test_expand_binomial():
    # 2/(1+t)^2 = 2 - 4t + 6t^2 - 8t^3 + ...
    r = RationalFunction(Poly([2]), cyclotomic_poly(2) ** 2)
    assert r.expand(4) == [Fraction(2), Fraction(-4), Fraction(6), Fraction(-8)]


def test_expand_r1a_display():
    # (2 - 28t + 2t^2)/(t-1)^4 expanded
    r = RationalFunction(Poly([2, -28, 2]), Poly([-1, 1]) ** 4)
    assert r.expand(7) == [Fraction(c) for c in (2, -20, -90, -232, -470, -828, -1330)]


def test_expand_pole_at_zero():
    with pytest.raises(PoleAtZeroError):
        RationalFunction(Poly([1]), Poly([0, 1])).expand(3)


def test_constant_expansion():
    assert RationalFunction(Poly([1]), Poly([1])).expand(3) == [1, 0, 0]


def test_reconstruct_rational():
    den = cyclotomic_poly(7)
    num = Poly([2, 3, 4, 3, 2])
    series = RationalFunction(num, den).expand(2 * den.degree + 4)
    fit = reconstruct_rational(series, den)
    assert fit is not None
    got, palindromic = fit
    assert got == num
    assert palindromic  # degree 4 = deg(den) - 2 and symmetric
    # a perturbed series does not force-fit
    series[-1] += 1
    assert reconstruct_rational(series, den) is None
    with pytest.raises(ValueError):
        reconstruct_rational(series[:3], den)


def test_reconstruct_constant():
    fit = reconstruct_rational([Fraction(2), Fraction(0), Fraction(0)], Poly([1]))
    assert fit is not None and fit[0] == Poly([2])


def test_pole_coefficient():
    # 5/(t-1)^4 + 1/(t-1): leading order-4 coefficient at t=1 is 5
    f = RationalFunction(Poly([5]), Poly([-1, 1]) ** 4) + \
        RationalFunction(Poly([1]), Poly([-1, 1]))
    assert f.pole_coefficient(Fraction(1), 4) == 5
