from fractions import Fraction

import pytest

from k3moonshine.qpoly import Poly, RationalFunction, cyclotomic_poly
from k3moonshine.series import NotInSpanError, TruncatedSeries
from k3moonshine.modforms import euler_specialization, weak_jacobi_phi
from k3moonshine.genus import (
    SYMPLECTIC_CLASSES, chi_sym_power, chi_symt_series, elliptic_genus,
    equivariant_elliptic_genus, fixed_point_count, jacobi_split,
    rational_form, verify_moonshine_class, weighted_equivariant_genus,
)

T5 = 5 * 24


def test_chi_sym_power_values():
    assert [chi_sym_power(n) for n in range(7)] == \
        [2, -20, -90, -232, -470, -828, -1330]


def test_chi_symt_series_2a():
    assert chi_symt_series("2A", 4) == [2, -4, 6, -8]


def test_chi_symt_leading_is_two_everywhere():
    for label in SYMPLECTIC_CLASSES:
        assert chi_symt_series(label, 1)[0] == 2


def test_chi_symt_integrality():
    for label in SYMPLECTIC_CLASSES:
        for c in chi_symt_series(label, 12):
            assert c.denominator == 1


def test_chi_symt_8a_matches_rational_form():
    expected = RationalFunction(Poly([2, 2, 2]), cyclotomic_poly(8)).expand(10)
    assert chi_symt_series("8A", 10) == expected


def test_rational_forms_match_published_display():
    expected = {
        "1A": RationalFunction(Poly([2, -28, 2]), cyclotomic_poly(1) ** 4),
        "2A": RationalFunction(Poly([2]), cyclotomic_poly(2) ** 2),
        "3A": RationalFunction(Poly([2]), cyclotomic_poly(3)),
        "4A": RationalFunction(Poly([2]), cyclotomic_poly(4)),
        "5A": RationalFunction(Poly([2, 2, 2]), cyclotomic_poly(5)),
        "6A": RationalFunction(Poly([2]), cyclotomic_poly(6)),
        "7AB": RationalFunction(Poly([2, 3, 4, 3, 2]), cyclotomic_poly(7)),
        "8A": RationalFunction(Poly([2, 2, 2]), cyclotomic_poly(8)),
    }
    for label, want in expected.items():
        assert rational_form(label) == want, label


def test_rational_form_numerators_palindromic():
    for label in SYMPLECTIC_CLASSES:
        if label == "1A":
            continue
        r = rational_form(label)
        assert r.num.is_palindromic()
        assert r.num.degree == r.den.degree - 2


def test_elliptic_genus_q0():
    eg = elliptic_genus(T5)
    assert eg.coeff(0, y=-1) == 2
    assert eg.coeff(0, y=0) == 20
    assert eg.coeff(0, y=1) == 2
    assert eg.is_y_symmetric()


def test_elliptic_genus_euler_constant_24():
    eg = elliptic_genus(T5)
    e = euler_specialization(eg)
    assert e.coeff(0) == 24
    for k in range(1, 5):
        assert e.coeff(k) == 0


def test_elliptic_genus_equals_twice_phi01():
    eg = elliptic_genus(T5)
    assert eg == weak_jacobi_phi(0, T5) * 2


def test_equivariant_2a():
    s = equivariant_elliptic_genus("2A", 4 * 24)
    assert s.coeff(0, y=-1) == 2
    assert s.coeff(0, y=0) == 4
    assert s.coeff(0, y=1) == 2
    e = euler_specialization(s)
    assert e.coeff(0) == 8
    for k in range(1, 4):
        assert e.coeff(k) == 0


def test_equivariant_euler_equals_fixed_point_count():
    for label in SYMPLECTIC_CLASSES:
        if label == "1A":
            continue
        s = equivariant_elliptic_genus(label, 3 * 24)
        e = euler_specialization(s)
        assert e.coeff(0) == fixed_point_count(label), label
        assert e.coeff(1) == 0 and e.coeff(2) == 0


def test_weighted_form_matches_fixed_point_formula():
    for label in ("2A", "5A", "7AB", "8A"):
        a = equivariant_elliptic_genus(label, 3 * 24)
        b = weighted_equivariant_genus(label, 3 * 24)
        assert a == b, label


def test_jacobi_split_of_genus():
    a, h = jacobi_split(elliptic_genus(T5))
    assert a == 2
    assert h.is_zero()


def test_jacobi_split_of_phi_m21():
    a, h = jacobi_split(weak_jacobi_phi(-2, T5))
    assert a == 0
    assert h.coeff(0) == 1
    assert h == TruncatedSeries.const(Fraction(1), h.trunc24)


def test_jacobi_split_equivariant():
    s = equivariant_elliptic_genus("2A", 4 * 24)
    a, h = jacobi_split(s)
    assert a == Fraction(8, 12)
    recon = weak_jacobi_phi(0, 4 * 24) * a + h * weak_jacobi_phi(-2, 4 * 24)
    assert recon == s.truncate(min(recon.trunc24, s.trunc24))


def test_jacobi_split_rejects_off_span():
    bad = elliptic_genus(3 * 24) + TruncatedSeries.monomial(
        Fraction(1), 24, 0, 0, 3 * 24)
    with pytest.raises(NotInSpanError):
        jacobi_split(bad)


def test_verify_moonshine_roundtrip():
    for label in ("2A", "3A", "6A"):
        s = equivariant_elliptic_genus(label, 4 * 24)
        _a, h = jacobi_split(s)
        report = verify_moonshine_class(label, h, 4 * 24)
        assert report.ok, label


def test_verify_moonshine_1a_with_zero_f():
    # non-equivariant case: a = 2, f = 0
    report = verify_moonshine_class("1A", TruncatedSeries.zero(4 * 24), 4 * 24)
    assert report.ok


def test_corrupted_fixed_point_data_detected(monkeypatch):
    import k3moonshine.genus as genus_mod
    broken = dict(genus_mod.FIXED_POINT_EIGENVALUES)
    broken[5] = ((1, 2), (2, 1))   # drops one eigenvalue pair: sum stays
    monkeypatch.setattr(genus_mod, "FIXED_POINT_EIGENVALUES", broken)
    with pytest.raises(ArithmeticError):
        genus_mod.equivariant_elliptic_genus("5A", 2 * 24)
