"""Acceptance criteria, one test per criterion, exact tolerances.

Criterion 8 is split: every published quotient and equality passes except
the Conway-group index, which is asserted at its stated value and fails:
the computed index is 1, because the restricted lambda-ring of the
24-dimensional representation (verified against the determinant oracle
det(1 + tP) and closed under products) already generates all of N.
"""

import pytest

from k3moonshine import acceptance as acc


def _check(fn, **kw):
    ok, detail = fn(**kw)
    assert ok, detail


def test_criterion_1_r1a():
    _check(acc.check_1_r1a)


def test_criterion_2_rational_forms():
    _check(acc.check_2_rational_forms)


def test_criterion_3_elliptic_genus():
    _check(acc.check_3_elliptic_genus, q_order=6)


def test_criterion_4_split_and_weighted_form():
    _check(acc.check_4_theorem_split, q_order=6)


def test_criterion_5_appell_lerch_engine():
    _check(acc.check_5_appell_lerch)


def test_criterion_6_decomposition_table():
    _check(acc.check_6_table3)


def test_criterion_7_genus_decomposition():
    _check(acc.check_7_genus_decomposition)


def test_criterion_8_lattice_suite_without_conway_index():
    from k3moonshine.tables import (load_m23, load_m24, load_mukai,
                                    SYMPLECTIC_M23_LABELS,
                                    SYMPLECTIC_M24_LABELS)
    from k3moonshine.replattice import (restricted_lattice, mukai_lattice_N,
                                        sufficiency_scan)
    from k3moonshine.lattice import IntegerLattice, snf_quotient
    tables = [load_mukai(i) for i in range(1, 12)]
    N, lattices = mukai_lattice_N(tables)
    assert str(snf_quotient(N, IntegerLattice.full(8))) == "2 x 4 x 24 x 40320"
    for i, lat in enumerate(lattices):
        assert str(snf_quotient(N, lat)) == acc.NI_OVER_N[i], f"N_{i+1}"
    assert restricted_lattice(load_m24(), SYMPLECTIC_M24_LABELS) == N
    assert restricted_lattice(load_m23(), SYMPLECTIC_M23_LABELS) == N
    four, triples = sufficiency_scan(lattices, N)
    assert all(four.values()) and len(four) == 3
    assert triples == []


def test_criterion_8_conway_index():
    # Stated value [N : K''] = 2.  The computation yields 1: the restricted
    # lambda-ring of the Leech representation generates all of N, so the
    # published index cannot be reproduced.  Deliberately left failing.
    from k3moonshine.tables import load_co0_restricted, load_m24, \
        SYMPLECTIC_M24_LABELS
    from k3moonshine.replattice import restricted_lattice
    co0 = load_co0_restricted()
    kdp = restricted_lattice(co0, [c.label for c in co0.classes])
    N = restricted_lattice(load_m24(), SYMPLECTIC_M24_LABELS)
    assert kdp.index_in(N) == 2


def test_criterion_9_multiplicity_table():
    _check(acc.check_9_table2, t_order=21)


def test_criterion_10_integrality_audit():
    _check(acc.check_10_audit)


def test_criterion_11_property_suites():
    # the randomized suites live in test_properties.py; this records the
    # mapping so the acceptance module is self-contained
    import tests.test_properties as props
    props.test_series_ring_axioms()
    props.test_hnf_idempotence_random()
    props.test_triple_product_identity()
    props.test_spectral_flow_roundtrip_random()
    props.test_y_independence_residuals_on_character_span()
