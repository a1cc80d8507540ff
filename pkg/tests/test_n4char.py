from fractions import Fraction

import pytest

from k3moonshine.series import (
    InsufficientPrecisionError, NotInSpanError, TruncatedSeries,
    geometric_factor,
)
from k3moonshine.modforms import eta_power, jacobi_theta
from k3moonshine.genus import chi_sym_power, chi_symt_series, \
    elliptic_genus, equivariant_elliptic_genus
from k3moonshine.n4char import (
    atypical_ns, ch_v_product, ch_vn_closed, ch_vn_extract, ch_vn_h_form,
    decompose_into_n4, g_series, genus_A_coefficients, h_series,
    n4_character, polar_part, ramond_basis_character,
    symmetric_power_crosscheck, twining_to_symtraces,
)

T3 = 3 * 24


@pytest.fixture(scope="module")
def product():
    return ch_v_product(T3, 8)


def test_ch_v_leading_terms(product):
    assert product.coeff(Fraction(-1, 4)) == 1
    # q^(-1/4+1/2) coefficient is (z + 1/z)(y + 1/y)
    slice_ = product.q_slice(6)
    assert slice_ == {(2, 1): Fraction(1), (-2, 1): Fraction(1),
                      (2, -1): Fraction(1), (-2, -1): Fraction(1)}


def test_denominator_identity(product):
    # ch_V = theta3^2/eta^6 (1 - 1/z)^2 sum_{m,m'} z^(m+m') /
    #        ((1+y q^(m-1/2))(1+y^(-1) q^(m'-1/2)))  to q^2
    from k3moonshine.n4char import _inverse_fermion_factor
    t = 2 * 24
    zwin = 10
    total = TruncatedSeries.zero(t + 6)
    for m in range(-3, zwin + 4):
        fm = _inverse_fermion_factor(2 * m - 1, 2, t + 6)
        fm = TruncatedSeries.monomial(Fraction(1), 0, 0, m) * fm
        for mp in range(-3, zwin + 4):
            fmp = _inverse_fermion_factor(2 * mp - 1, -2, t + 6)
            if fm.min_q24 is None or fmp.min_q24 is None:
                continue
            if fm.min_q24 + fmp.min_q24 >= t + 6:
                continue
            total = total + fm * TruncatedSeries.monomial(
                Fraction(1), 0, 0, mp) * fmp
    pref = jacobi_theta(3, t + 18) ** 2 * eta_power(-6, t + 18)
    one_minus = TruncatedSeries.const(Fraction(1)) - TruncatedSeries.monomial(
        Fraction(1), 0, 0, -1)
    rhs = (pref * one_minus * one_minus * total).truncate(t)
    # compare inside a safe z-window (the double sum was truncated in z)
    for z in range(-2, 3):
        assert rhs.z_coefficient(z) == product.z_coefficient(z).truncate(t), z


def test_extraction_leading(product):
    v0 = ch_vn_extract(0, T3, product, 8)
    assert v0.min_q24 == -6 and v0.coeff(Fraction(-1, 4)) == 1
    v1 = ch_vn_extract(1, T3, product, 8)
    assert v1.min_q24 == 6
    assert v1.coeff(Fraction(1, 4), y=1) == 1
    assert v1.coeff(Fraction(1, 4), y=-1) == 1


def test_dimension_count(product):
    # sum (N+1) ch_{V_N} = ch_V at z = 1, through q^2
    t = 2 * 24
    total = TruncatedSeries.zero(t)
    # V_N for N > 6 has no support below q^2 (z-charge 8 costs more)
    for n in range(0, 7):
        total = total + ch_vn_extract(n, t, product, 8) * (n + 1)
    assert total == product.substitute_z_value(1).truncate(t)


def test_closed_equals_extraction(product):
    for n in range(0, 5):
        assert ch_vn_closed(n, T3) == ch_vn_extract(n, T3, product, 8), n


def test_h_form_equals_closed():
    for n in range(0, 4):
        assert ch_vn_h_form(n, T3) == ch_vn_closed(n, T3), n


def test_fourier_split_holomorphic_cases():
    th3 = jacobi_theta(3, T3)
    for n in (0, 2, 3, 4, 5):
        assert g_series(n, T3) == th3 * h_series(n, T3), n


def test_polar_split_of_g1():
    th3 = jacobi_theta(3, T3)
    lhs = g_series(1, T3) - th3 * h_series(1, T3)
    assert lhs == polar_part(T3)


def test_g_sum_symmetry():
    # the defining m-sum of g_0 is invariant under y -> 1/y
    from k3moonshine.n4char import g_sum
    s = g_sum(0, T3)
    assert s.is_y_symmetric()


def test_h_truncation_stability():
    # recomputing with a larger window changes nothing below the horizon
    for n in (1, 2, 5):
        a = h_series(n, T3)
        b = h_series(n, T3 + 48).truncate(T3)
        assert a == b, n


def test_atypical_relation():
    # ch_(1/4) = 2 ch_(1/4,0) + ch_(1/4,1) with nonnegative leading term
    t = T3
    massless_sum = n4_character(Fraction(1, 4), "NS", t)
    ch_141 = massless_sum - atypical_ns(t) * 2
    lead = ch_141.q_slice(ch_141.min_q24)
    assert all(c > 0 for c in lead.values())


def test_typical_character_leading():
    # q^(h-3/8) theta3^2/eta^3 has leading exponent h - 1/2
    ch3 = n4_character(3, "NS", 5 * 24)
    assert ch3.min_q24 == 24 * 3 - 12
    r = n4_character(Fraction(5, 4), "R", 5 * 24)
    assert r.min_q24 == 24  # h - 1/4 = 1 for the flowed theta2^2 shape
    e = r.substitute_y_value(1)
    assert e.coeff(1) == 4  # (y + 2 + 1/y) at y=1


def test_decompose_table3_first_rows():
    t = 7 * 24
    expected = {
        0: (-2, [1, 0, 1, 0, 1, 3]),
        1: (1, [0, 0, 0, 2, 2, 2]),
        2: (0, [0, 1, 0, 1, 3, 5]),
        3: (0, [0, 0, 2, 0, 2, 6]),
    }
    for n, (atyp, row) in expected.items():
        dec = decompose_into_n4(ch_vn_h_form(n, t), "NS")
        assert dec.atypical == atyp, n
        assert dec.table_row(range(6)) == row, n


def test_decompose_pure_typical():
    t = 5 * 24
    s = n4_character(3, "NS", t)
    dec = decompose_into_n4(s, "NS")
    assert dec.atypical == 0
    nonzero = {h: c for h, c in dec.typical.items() if c}
    assert nonzero == {Fraction(3): Fraction(1)}


def test_decompose_rejects_off_span():
    t = 4 * 24
    bad = n4_character(3, "NS", t) + jacobi_theta(3, t)
    with pytest.raises(NotInSpanError):
        decompose_into_n4(bad, "NS")


def test_flow_consistency_of_multiplicities():
    v1 = ch_vn_h_form(1, 6 * 24)
    m_ns = decompose_into_n4(v1, "NS")
    m_r = decompose_into_n4(v1.spectral_flow(+1), "R")
    assert m_ns.atypical == m_r.atypical
    hz = min(m_ns.horizon24, m_r.horizon24)
    for h in set(m_ns.typical) | set(m_r.typical):
        if 24 * (h - Fraction(3, 8)) < hz:
            assert m_ns.typical.get(h, 0) == m_r.typical.get(h, 0)


def test_ramond_lattice_is_integral():
    flowed = ch_vn_h_form(2, 5 * 24).spectral_flow(+1)
    assert all(q24 % 24 == 0 for (q24, _, _) in flowed.terms)


def test_genus_decomposition_anchors():
    genus = elliptic_genus(7 * 24)
    dec = genus_A_coefficients(4, genus)
    assert dec.atypical == 24
    assert dec.A == [-2, 90, 462, 1540, 4554]
    assert all(a.denominator == 1 for a in dec.A)


def test_symmetric_power_crosscheck():
    genus = elliptic_genus(7 * 24)
    report = symmetric_power_crosscheck(4, genus)
    assert all(ok for (_, _, ok) in report.values())


def test_twining_solve_identity_class():
    genus = elliptic_genus(6 * 24)
    cs = twining_to_symtraces(genus, 4)
    assert cs == [chi_sym_power(n) for n in range(5)]


def test_twining_solve_equivariant():
    t = 6 * 24
    basis = [ramond_basis_character(n, t + 48) for n in range(6)]
    for label in ("2A", "8A"):
        tw = equivariant_elliptic_genus(label, t)
        cs = twining_to_symtraces(tw, 4, basis=basis)
        assert cs == chi_symt_series(label, 5), label


def test_twining_solve_with_pinned_c1():
    genus = elliptic_genus(6 * 24)
    cs = twining_to_symtraces(genus, 4, fix_c1=Fraction(-20))
    assert cs == [chi_sym_power(n) for n in range(5)]


def test_flowed_vacuum_ground_states():
    # ch_{M_0} = q^(1/4) y ch_{V_0}(y q^(1/2)): two Ramond ground states
    v0 = ch_vn_h_form(0, 6 * 24)
    m0 = v0.spectral_flow(+1)
    assert m0.q_slice(0) == {(2, 0): Fraction(1), (-2, 0): Fraction(1)}


def test_flow_consistency_vacuum_deeper():
    # Remark-style: the flowed vacuum decomposes with the NS multiplicities
    v0 = ch_vn_h_form(0, 11 * 24)
    m_ns = decompose_into_n4(v0, "NS")
    m_r = decompose_into_n4(v0.spectral_flow(+1), "R")
    assert m_ns.atypical == m_r.atypical == -2
    hz = min(m_ns.horizon24, m_r.horizon24)
    assert hz >= 5 * 24
    for h in set(m_ns.typical) | set(m_r.typical):
        if 24 * (h - Fraction(3, 8)) < hz:
            assert m_ns.typical.get(h, 0) == m_r.typical.get(h, 0), h
