from fractions import Fraction

import pytest

from k3moonshine.lattice import IntegerLattice, snf_quotient
from k3moonshine.genus import rational_form, SYMPLECTIC_CLASSES
from k3moonshine.qpoly import Poly, RationalFunction, cyclotomic_poly
from k3moonshine.replattice import (
    ALPHA_ROWS, alpha_basis_check, chosen_rational_form, decompose_family,
    expand_to_irreducible_columns, first_nonintegral, m_chi_rational,
    mukai_lattice_N, order_lattice, restricted_lattice, solve_virtual_m24,
    sufficiency_scan,
)
from k3moonshine.tables import (
    SYMPLECTIC_M23_LABELS, SYMPLECTIC_M24_LABELS, load_co0_restricted,
    load_m23, load_m24, load_mukai,
)


@pytest.fixture(scope="module")
def mukai_tables():
    return [load_mukai(i) for i in range(1, 12)]


@pytest.fixture(scope="module")
def lattice_N(mukai_tables):
    return mukai_lattice_N(mukai_tables)


def test_trivial_character_restricts_to_ones():
    lat = restricted_lattice(load_m24(), SYMPLECTIC_M24_LABELS)
    assert lat.contains([1] * 8)


def test_restriction_lattices_equal_N(lattice_N):
    N, _ = lattice_N
    assert restricted_lattice(load_m24(), SYMPLECTIC_M24_LABELS) == N
    assert restricted_lattice(load_m23(), SYMPLECTIC_M23_LABELS) == N


def test_M_over_N(lattice_N):
    N, _ = lattice_N
    assert str(snf_quotient(N, IntegerLattice.full(8))) == "2 x 4 x 24 x 40320"


def test_Ni_quotients(lattice_N):
    N, lattices = lattice_N
    expected = ["4 x 12 x 480", "4 x 4 x 672", "2 x 4 x 672", "12 x 168",
                "3 x 420", "2 x 280", "2 x 840", "2 x 840", "2 x 4 x 1120",
                "4 x 4 x 3360", "2 x 1680"]
    for lat, want in zip(lattices, expected):
        assert str(snf_quotient(N, lat)) == want


def test_h1_orders():
    t = load_mukai(1)
    assert sorted({c.order for c in t.classes}) == [1, 2, 3, 4, 7]


def test_sufficiency(lattice_N):
    N, lattices = lattice_N
    four, triples = sufficiency_scan(lattices, N)
    assert all(four.values()) and len(four) == 3
    assert triples == []


def test_co0_lattice_contained_in_N(lattice_N):
    N, _ = lattice_N
    co0 = load_co0_restricted()
    kdp = restricted_lattice(co0, [c.label for c in co0.classes])
    assert N.contains_lattice(kdp)


def test_solve_virtual_m24_permutation_vector(lattice_N):
    res = solve_virtual_m24((24, 8, 6, 4, 4, 2, 3, 2), load_m24(),
                            SYMPLECTIC_M24_LABELS)
    assert res.solved
    # reconstruct and compare
    table = load_m24()
    cols = [table.class_index(l) for l in SYMPLECTIC_M24_LABELS]
    vec = [sum(res.coords[i] * int(ch.values[c])
               for i, ch in enumerate(table.characters)) for c in cols]
    assert vec == [24, 8, 6, 4, 4, 2, 3, 2]


def test_solve_virtual_m24_trivial():
    res = solve_virtual_m24((1,) * 8, load_m24(), SYMPLECTIC_M24_LABELS)
    assert res.solved


def test_solve_virtual_m24_rejects_non_member(lattice_N):
    N, _ = lattice_N
    # construct a violation of the largest invariant-factor congruence:
    # scan unit vectors until one is outside N
    bad = None
    for k in range(8):
        v = [0] * 8
        v[k] = 1
        if not N.contains(v):
            bad = v
            break
    assert bad is not None
    res = solve_virtual_m24(bad, load_m24(), SYMPLECTIC_M24_LABELS)
    assert not res.solved
    assert "residue" in res.certificate


def test_decompose_family_orthogonality():
    m23 = load_m23()
    fam = {c.label: [Fraction(1)] for c in m23.classes}
    dec = decompose_family(m23, fam)
    assert dec["chi1"] == [1]
    assert all(v == [0] for name, v in dec.items() if name != "chi1")


def test_table2_row0_and_row4():
    m23 = load_m23()
    forms = {lab: rational_form(lab) for lab in SYMPLECTIC_CLASSES}
    for lab in ("11AB", "14AB", "15AB", "23AB"):
        forms[lab] = chosen_rational_form(lab)
    family = {lab: [-c for c in rf.expand(5)] for lab, rf in forms.items()}
    cols = expand_to_irreducible_columns(m23, decompose_family(m23, family))
    assert [int(cols[j][0]) for j in range(17)] == \
        [-2] + [0] * 16
    assert [int(cols[j][4]) for j in range(17)] == \
        [2, -2, -2, -2, 0, 2, 0, 0, 2, 0, 0, 1, 1, 1, 1, 0, -2]


def test_chosen_forms_shape():
    for lab in ("11AB", "14AB", "15AB", "23AB"):
        r = chosen_rational_form(lab)
        assert r.num.is_palindromic()
        assert r.num.degree == r.den.degree - 2


def test_alternate_11ab_is_not_a_character():
    # the rational-but-non-moonshine variant with 32/5 coefficients gives a
    # non-integral multiplicity somewhere
    m23 = load_m23()
    forms = {lab: rational_form(lab) for lab in SYMPLECTIC_CLASSES}
    for lab in ("14AB", "15AB", "23AB"):
        forms[lab] = chosen_rational_form(lab)
    forms["11AB"] = RationalFunction(
        Poly([2, 4, Fraction(32, 5), Fraction(38, 5), Fraction(42, 5),
              Fraction(38, 5), Fraction(32, 5), 4, 2]),
        cyclotomic_poly(11))
    family = {lab: [-c for c in rf.expand(12)] for lab, rf in forms.items()}
    dec = decompose_family(m23, family)
    assert any(first_nonintegral(series) is not None
               for series in dec.values())


def test_m_chi_rational_pole_structure():
    m23 = load_m23()
    forms = {lab: rational_form(lab) for lab in SYMPLECTIC_CLASSES}
    for lab in ("11AB", "14AB", "15AB", "23AB"):
        forms[lab] = chosen_rational_form(lab)
    out = m_chi_rational(m23, forms)
    # c_chi = -24 deg(chi) / |G| for every row
    for ch in m23.characters:
        _m, pole = out[ch.name]
        assert pole == Fraction(-24 * ch.degree, m23.order)


def test_m_chi_matches_series_decomposition():
    m23 = load_m23()
    forms = {lab: rational_form(lab) for lab in SYMPLECTIC_CLASSES}
    for lab in ("11AB", "14AB", "15AB", "23AB"):
        forms[lab] = chosen_rational_form(lab)
    out = m_chi_rational(m23, forms)
    family = {lab: rf.expand(9) for lab, rf in forms.items()}
    dec = decompose_family(m23, family)
    for name, (m, _pole) in out.items():
        assert m.expand(9) == dec[name]


def test_alpha_rows_vanish():
    ok = alpha_basis_check(load_m23(), ALPHA_ROWS, SYMPLECTIC_M23_LABELS)
    assert ok == [True] * 4


def test_order_lattice_full_when_no_conditions():
    # a table with all distinct orders imposes only the projection structure
    t = load_mukai(1)  # L2(7): orders 1,2,3,4,7 all simple classes
    lat = order_lattice(t)
    assert lat.rank == 8


def test_solve_virtual_m24_chi_of_structure_sheaf():
    # chi(g; X, O) = 2 for every class: the constant vector lies in K
    res = solve_virtual_m24((2,) * 8, load_m24(), SYMPLECTIC_M24_LABELS)
    assert res.solved
