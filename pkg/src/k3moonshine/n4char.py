"""The N=4 character engine at central charge six.

Builds the three-variable character of the free-field algebra V, extracts
the SL(2)-isotypic characters ch_{V_N} two independent ways (z-coefficient
extraction from the product formula, and the closed Appell-Lerch form),
computes the Fourier parts h_N and the polar part of g_1, decomposes
characters into typical/atypical N=4 pieces, and inverts the elliptic-genus
decomposition to recover symmetric-power traces from twining genera.

Sector bookkeeping: NS characters carry q-exponents in -1/4 + (1/2)Z; the
flow ch_M(y;q) = q^(1/4) y ch_V(y q^(1/2); q) maps them to the Ramond
sector.  The elliptic genus pairs with the *signed* flow (fermion-number
signs, y -> -y before flowing); the choice is pinned by the anchors
A_0 = -2 and atypical multiplicity 24 and frozen in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import (
    NotInSpanError, TruncatedSeries, binomial_factor, geometric_factor,
    prune_z_window,
)
from .modforms import eta_power, jacobi_theta
from .genus import chi_sym_power

__all__ = [
    "ch_v_product",
    "ch_vn_extract",
    "g_series",
    "h_series",
    "polar_part",
    "atypical_ns",
    "n4_character",
    "ch_vn_closed",
    "ch_vn_h_form",
    "N4Multiplicities",
    "decompose_into_n4",
    "GenusDecomposition",
    "genus_A_coefficients",
    "symmetric_power_crosscheck",
    "ramond_basis_character",
    "twining_to_symtraces",
    "sigma_series",
]

_ONE = Fraction(1)


# -- the free-field character and isotypic extraction ------------------------

def ch_v_product(trunc24: int, zmax: int) -> TruncatedSeries:
    """tr_V q^(L0 - 1/4) z^f y^(J0) as a product, z-window |z| <= zmax.

    The window is widened internally so that no term that could re-enter
    |z| <= zmax by the truncation order is dropped.
    """
    pad = zmax + 2 * (trunc24 // 24 + 2)
    s = TruncatedSeries.monomial(_ONE, -6, 0, 0, trunc24)
    level = 1
    while 12 * (2 * level - 1) < trunc24 + 6:
        q24 = 12 * (2 * level - 1)  # q^(level - 1/2)
        for zz, y2 in ((1, 2), (1, -2), (-1, 2), (-1, -2)):
            s = s * binomial_factor(_ONE, q24, y2, zz)
        s = prune_z_window(s, -pad, pad)
        level += 1
    n = 1
    while 24 * n < trunc24 + 6:
        for zz in (1, -1):
            s = s * geometric_factor(_ONE, 24 * n, 0, zz, trunc24 + 6, power=2)
        s = prune_z_window(s, -pad, pad)
        n += 1
    return s


def ch_vn_extract(N: int, trunc24: int, product: TruncatedSeries | None = None,
                  zmax: int | None = None) -> TruncatedSeries:
    """ch_{V_N} as the z^N minus z^(N+2) coefficient of the product."""
    if zmax is None:
        zmax = N + 2
    if zmax < N + 2:
        raise ValueError("z-window too small for the requested extraction")
    if product is None:
        product = ch_v_product(trunc24, zmax)
    return product.z_coefficient(N) - product.z_coefficient(N + 2)


# -- Appell-Lerch machinery ----------------------------------------------------

def _inverse_fermion_factor(exp2: int, y2: int, trunc24: int) -> TruncatedSeries:
    """1/(1 + y^(y2/2) q^(exp2/2)) expanded in the region 0 < |q| < 1.

    ``exp2`` is twice the (half-integral, nonzero) q-exponent.  Negative
    exponents are rewritten toward positive powers of q before expanding.
    """
    if exp2 == 0:
        raise ValueError("exponent must be nonzero")
    if exp2 > 0:
        return geometric_factor(-_ONE, 12 * exp2, y2, 0, trunc24)
    flip = geometric_factor(-_ONE, -12 * exp2, -y2, 0, trunc24)
    pref = TruncatedSeries.monomial(_ONE, -12 * exp2, -y2, 0)
    return pref * flip


def g_sum(N: int, trunc24: int) -> TruncatedSeries:
    """sum_m 1/((1 + y q^(m-1/2)) (1 + y^(-1) q^(N-m-1/2)))."""
    total = TruncatedSeries.zero(trunc24)
    m = 0
    # walk outward from the band [0, N] until minimal degrees pass trunc
    lo, hi = min(0, N), max(0, N)
    m_values = list(range(lo, hi + 1))
    k = 1
    while 12 * (2 * k - 1) < trunc24:  # degree of the nearer rewritten factor
        m_values.append(hi + k)
        m_values.append(lo - k)
        k += 1
    for m in m_values:
        a2 = 2 * m - 1            # twice (m - 1/2)
        b2 = 2 * (N - m) - 1      # twice (N - m - 1/2)
        mindeg = (-12 * a2 if a2 < 0 else 0) + (-12 * b2 if b2 < 0 else 0)
        if mindeg >= trunc24:
            continue
        f = _inverse_fermion_factor(a2, 2, trunc24) * \
            _inverse_fermion_factor(b2, -2, trunc24)
        total = total + f
    return total


def g_series(N: int, trunc24: int) -> TruncatedSeries:
    """g_N = (theta3/eta^3) sum_m 1/((1+y q^(m-1/2))(1+y^(-1) q^(N-m-1/2)))."""
    pref = jacobi_theta(3, trunc24 + 3) * eta_power(-3, trunc24 + 3)
    return (pref * g_sum(N, trunc24 + 3)).truncate(trunc24)


def h_series(N: int, trunc24: int) -> TruncatedSeries:
    """The Fourier coefficient h_N(q), a pure q-series.

    Triple sum over m, r, s in Z + 1/2 with r, s > 0 of
    (-1)^(r+s+1) q^(r|m| + s|M-m| + (sgn(m) r + sgn(m-M) s)^2/2 - M/2)
    with M = N - 1, divided by eta^3.  The enumeration window doubles as a
    self-check: widening it must not change any kept coefficient.
    """
    M = N - 1
    body = _h_triple_sum(M, trunc24 + 3)
    return (body * eta_power(-3, trunc24 + 3)).truncate(trunc24)


def _h_triple_sum(M: int, trunc24: int) -> TruncatedSeries:
    # Exponent E = r|m| + s|M-m| + (sgn(m) r + sgn(m-M) s)^2/2 - M/2 with
    # the cross term >= 0, so r|m| + s|M-m| - M/2 < bound prunes all loops.
    terms: dict = {}
    bound = Fraction(trunc24, 24)
    half_M = Fraction(M, 2)
    width = int(2 * (bound + Fraction(abs(M), 2))) + 4
    m2_lo = 2 * min(0, M) - width
    if m2_lo % 2 == 0:
        m2_lo -= 1
    m2_hi = 2 * max(0, M) + width
    for m2 in range(m2_lo, m2_hi + 1, 2):
        m = Fraction(m2, 2)
        am, bm = abs(m), abs(M - m)
        if (am + bm) / 2 - half_M >= bound:
            continue
        sg = 1 if m > 0 else -1
        tg = 1 if m > M else -1
        rr = 1
        while Fraction(rr, 2) * am + bm / 2 - half_M < bound:
            r = Fraction(rr, 2)
            ss = 1
            while r * am + Fraction(ss, 2) * bm - half_M < bound:
                s = Fraction(ss, 2)
                expo = r * am + s * bm + (sg * r + tg * s) ** 2 / 2 - half_M
                if expo < bound:
                    q24 = 24 * expo
                    if q24.denominator != 1:
                        raise ArithmeticError("exponent off the (1/24) grid")
                    rs = (rr + ss) // 2
                    sign = 1 if rs % 2 else -1
                    key = (int(q24), 0, 0)
                    acc = terms.get(key, Fraction(0)) + sign
                    if acc:
                        terms[key] = acc
                    else:
                        terms.pop(key, None)
                ss += 2
            rr += 2
    return TruncatedSeries(terms, trunc24, _clean=True)


def polar_part(trunc24: int) -> TruncatedSeries:
    """The Appell-Lerch polar part of g_1:
    sum over alpha in Z+1/2 of y^(alpha+1/2) q^(alpha(alpha+1)/2) / (1+y q^alpha).

    Factors at negative alpha are rewritten toward positive q-powers
    before the geometric expansion.  (The exponent alpha(alpha+1)/2 is the
    one consistent with g_1 - theta3 h_1; see the residue computation.)
    """
    total = TruncatedSeries.zero(trunc24)
    a2 = 1
    while True:
        alpha = Fraction(a2, 2)
        base = alpha * (alpha + 1) / 2
        if a2 > 1 and 24 * base >= trunc24:
            break
        pref = TruncatedSeries.monomial(_ONE, int(24 * base), a2 + 1, 0)
        total = total + pref * _inverse_fermion_factor(a2, 2, trunc24 + 24)
        a2 += 2
    a2 = -1
    while True:
        alpha = Fraction(a2, 2)
        base = alpha * (alpha - 1) / 2  # alpha(alpha+1)/2 - alpha, rewritten
        if 24 * base >= trunc24:
            break
        pref = TruncatedSeries.monomial(_ONE, int(24 * base), a2 - 1, 0)
        total = total + pref * _inverse_fermion_factor(-a2, -2, trunc24 + 24)
        a2 -= 2
    return total.truncate(trunc24)


def atypical_ns(trunc24: int) -> TruncatedSeries:
    """(theta3/eta^3) times the polar sum: the massless NS building block."""
    pref = jacobi_theta(3, trunc24 + 6) * eta_power(-3, trunc24 + 6)
    return (pref * polar_part(trunc24 + 6)).truncate(trunc24)


def n4_character(h, sector: str, trunc24: int) -> TruncatedSeries:
    """Typical character q^(h-3/8) theta^2/eta^3 (theta3 NS, theta2 Ramond).

    The Ramond shape theta2^2 comes from spectral flow of the NS one.
    """
    h = Fraction(h)
    shift = int(24 * (h - Fraction(3, 8)))
    if 24 * (h - Fraction(3, 8)) != shift:
        raise ValueError("h - 3/8 must lie in (1/24) Z")
    kind = {"NS": 3, "R": 2}[sector]
    th = jacobi_theta(kind, trunc24 + 6 - shift) ** 2
    body = th * eta_power(-3, trunc24 + 6 - shift)
    return (TruncatedSeries.monomial(_ONE, shift, 0, 0) * body).truncate(trunc24)


def ch_vn_closed(N: int, trunc24: int) -> TruncatedSeries:
    """ch_{V_N} = (theta3/eta^3)(g_N - 2 g_(N+1) + 2 g_(N+3) - g_(N+4))."""
    t = trunc24 + 9
    pref = jacobi_theta(3, t) * eta_power(-3, t)
    combo = (g_sum(N, t - 3) - g_sum(N + 1, t - 3) * 2
             + g_sum(N + 3, t - 3) * 2 - g_sum(N + 4, t - 3))
    return ((pref * pref) * combo).truncate(trunc24)


def _atypical_coefficient(N: int) -> int:
    return {0: -2, 1: 1}.get(N, 0)


def ch_vn_h_form(N: int, trunc24: int) -> TruncatedSeries:
    """ch_{V_N} assembled from the Fourier parts h_N and the polar part."""
    t = trunc24 + 6
    typ = jacobi_theta(3, t) ** 2 * eta_power(-3, t)
    combo = (h_series(N, t) - h_series(N + 1, t) * 2
             + h_series(N + 3, t) * 2 - h_series(N + 4, t))
    out = (typ * combo).truncate(trunc24)
    a = _atypical_coefficient(N)
    if a:
        out = out + atypical_ns(trunc24) * a
    return out


# -- decomposition into N=4 characters ----------------------------------------

@dataclass(frozen=True)
class N4Multiplicities:
    """Atypical coefficient and typical multiplicities keyed by weight h.

    ``horizon24``: multiplicities at weights h with 24(h - 3/8) at or
    beyond it are outside the computed window and must not be read.
    """

    atypical: Fraction
    typical: dict  # Fraction h -> Fraction multiplicity
    horizon24: int

    def multiplicity(self, h) -> Fraction:
        h = Fraction(h)
        if 24 * (h - Fraction(3, 8)) >= self.horizon24:
            from .series import InsufficientPrecisionError
            raise InsufficientPrecisionError(
                f"weight {h} beyond the computed horizon")
        return self.typical.get(h, Fraction(0))

    def table_row(self, columns) -> list:
        """Multiplicities at h = 1/4 + k for the requested integer columns."""
        return [self.multiplicity(Fraction(1, 4) + k) for k in columns]


def decompose_into_n4(s: TruncatedSeries, sector: str = "NS") -> N4Multiplicities:
    """Solve s = a * atypical + sum_h mult(h) ch_h, exactly to truncation.

    The atypical coefficient is determined by requiring the typical
    quotient (s - a*atypical) * eta^3 / theta^2 to be y-independent.
    Ramond-sector input is flowed back to NS (the multiplicities agree
    sector-wise) and the result is reconstruction-checked.
    """
    if sector == "R":
        ns = s.spectral_flow(-1)
        return decompose_into_n4(ns, "NS")
    if sector != "NS":
        raise ValueError("sector must be 'NS' or 'R'")
    t = s.trunc24
    theta = jacobi_theta(3, t + 12)
    u = (s * eta_power(3, t + 12)).divide_exact(theta)
    h_full = u.divide_exact(theta)
    p_over_theta = polar_part(t + 12).divide_exact(theta)
    a = None
    for (q24, y2, z), c in sorted(h_full.terms.items()):
        if y2 or z:
            cp = p_over_theta.terms.get((q24, y2, z))
            if cp:
                a = c / cp
                break
    if a is None:
        a = Fraction(0)
    h = h_full - p_over_theta * a
    bad = [k for k in h.terms if k[1] or k[2]]
    if bad:
        raise NotInSpanError("input is not in the N=4 span",
                             q24=min(k[0] for k in bad))
    typical = {}
    for (q24, _y2, _z), c in h.terms.items():
        weight = Fraction(q24, 24) + Fraction(3, 8)
        typical[weight] = c
    return N4Multiplicities(a, typical, h.trunc24)


# -- the elliptic-genus decomposition ------------------------------------------

def ramond_basis_character(N: int, trunc24: int,
                           closed: bool = True) -> TruncatedSeries:
    """The Ramond-sector character ch_{M_N} graded to pair with the genus.

    This is the spectral flow of ch_{V_N} with fermion-number signs
    (y -> -y before flowing); the convention is pinned by the identity
    elliptic_genus = sum_n chi(X, S^n T) * ch_{M_n}.
    """
    ns = ch_vn_h_form(N, trunc24) if closed else None
    if ns is None:
        raise ValueError("extraction route not wired here; use closed form")
    return ns.substitute_y_sign().spectral_flow(+1)


@dataclass(frozen=True)
class GenusDecomposition:
    atypical: Fraction
    A: list


def genus_A_coefficients(nmax: int, genus: TruncatedSeries) -> GenusDecomposition:
    """Decompose the K3 elliptic genus: 24 massless + sum A_n ch^R_(1/4+n).

    The genus pairs with the fermion-parity-signed spectral flow, so the
    inverse transport is flow back first, then undo the y-sign.
    """
    ns = genus.spectral_flow(-1).substitute_y_sign()
    dec = decompose_into_n4(ns, "NS")
    a_list = [-dec.multiplicity(Fraction(1, 4) + n) for n in range(nmax + 1)]
    return GenusDecomposition(-dec.atypical, a_list)


# Bundle combinations of the A_n display: A_n = -chi(X, combo) with combo a
# multiset of symmetric powers S^k T (k -> multiplicity).
A_COEFFICIENT_BUNDLES = {
    0: {0: 1},
    1: {2: 1},
    2: {0: 1, 3: 2},
    3: {1: 2, 2: 1, 4: 3},
    4: {0: 1, 1: 2, 2: 3, 3: 2, 4: 1, 5: 4},
}


def symmetric_power_crosscheck(nmax: int, genus: TruncatedSeries) -> dict:
    """Check A_n = -chi(X, bundle combination) for n <= nmax (max 4)."""
    if nmax > 4:
        raise ValueError("bundle combinations are tabulated for n <= 4 only")
    dec = genus_A_coefficients(nmax, genus)
    report = {}
    for n in range(nmax + 1):
        combo = A_COEFFICIENT_BUNDLES[n]
        expected = -sum(mult * chi_sym_power(k) for k, mult in combo.items())
        report[n] = (dec.A[n], Fraction(expected), dec.A[n] == expected)
    return report


# -- recovering symmetric-power traces from twinings ---------------------------

def twining_to_symtraces(twining: TruncatedSeries, tmax: int,
                         basis: list | None = None,
                         fix_c1=None) -> list[Fraction]:
    """Solve twining = sum_n c_n ch_{M_n} for c_n = chi(g; X, S^n T).

    Unknowns are resolved greedily by the leading q-order of the basis
    characters, solving the full y-slice system at each order exactly and
    verifying the final residual.  Integrality of the output is *not*
    assumed.  ``fix_c1`` pins c_1 externally and removes the massless
    block equation (the paper's recursion needs chi(g; X, T) as an input
    when only typical columns are matched).
    """
    trunc24 = twining.trunc24
    if basis is None:
        basis = [ramond_basis_character(n, trunc24 + 24)
                 for n in range(tmax + 2)]
    if len(basis) < tmax + 2:
        raise ValueError("basis must extend one character past tmax "
                         "(it delimits the verification horizon)")
    residual = twining
    coeffs: dict[int, Fraction] = {}
    if fix_c1 is not None:
        coeffs[1] = Fraction(fix_c1)
        residual = residual - basis[1] * coeffs[1]
    unsolved = [n for n in range(tmax + 1) if n not in coeffs]
    marker = basis[tmax + 1]
    horizon = min([trunc24]
                  + [b.trunc24 for b in basis[:tmax + 2]]
                  + [marker.min_q24 if marker.min_q24 is not None
                     else marker.trunc24])
    while unsolved:
        lead = {n: basis[n].min_q24 for n in unsolved}
        if any(v is None for v in lead.values()):
            raise NotInSpanError("basis character vanishes identically")
        e = min(lead.values())
        if e >= horizon:
            raise NotInSpanError(
                "basis leading orders exceed the computed horizon", q24=e)
        block = [n for n in unsolved if lead[n] == e]
        rows: dict[tuple, dict] = {}
        for n in block:
            for (q24, y2, z), c in basis[n].terms.items():
                if q24 == e:
                    rows.setdefault((y2, z), {})[n] = c
        rhs = {}
        for (q24, y2, z), c in residual.terms.items():
            if q24 == e:
                rhs[(y2, z)] = c
        sol = _solve_block(rows, rhs, block, e)
        for n, c in sol.items():
            coeffs[n] = c
            if c:
                residual = residual - basis[n] * c
            unsolved.remove(n)
        # residual must now vanish at order e
        if any(q24 == e for (q24, _, _) in residual.terms):
            raise NotInSpanError("twining not in the character span", q24=e)
    if not residual.is_zero() and residual.min_q24 < horizon:
        raise NotInSpanError("nonzero residual after solving",
                             q24=residual.min_q24)
    return [coeffs[n] for n in range(tmax + 1)]


def _solve_block(rows: dict, rhs: dict, block: list, e: int) -> dict:
    """Exact solve of the y-slice system at one q-order; must be unique."""
    keys = sorted(set(rows) | set(rhs))
    mat = [[rows.get(k, {}).get(n, Fraction(0)) for n in block] for k in keys]
    vec = [rhs.get(k, Fraction(0)) for k in keys]
    ncols = len(block)
    # Gaussian elimination over Q with consistency check
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        vec[rank], vec[piv] = vec[piv], vec[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        vec[rank] = vec[rank] * inv
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
                vec[i] = vec[i] - f * vec[rank]
        pivots.append(col)
        rank += 1
    if rank < ncols:
        raise NotInSpanError(
            f"ambiguous block at q24={e}: columns {block}", q24=e)
    for i in range(rank, len(mat)):
        if vec[i]:
            raise NotInSpanError("inconsistent slice system", q24=e)
    out = {}
    for r, col in enumerate(pivots):
        out[block[col]] = vec[r]
    return out


def symtraces_via_columns(twining: TruncatedSeries, tmax: int,
                          c1=None) -> list[Fraction]:
    """Recover c_n = chi(g; X, S^n T) from typical-column data alone.

    This is the recursion that needs chi(g; X, T) as an input: the
    column system leaves c_1 undetermined (it first appears tied to c_4),
    and the massless-column equation normally closes it.  With ``c1``
    supplied that equation is dropped, exposing the one-parameter family
    used in the non-integrality analysis.
    """
    ns = twining.spectral_flow(-1).substitute_y_sign()
    target = decompose_into_n4(ns, "NS")
    rows = []
    for n in range(tmax + 1):
        dec = decompose_into_n4(ch_vn_h_form(n, ns.trunc24 + 12), "NS")
        rows.append(dec)
    horizon = min([target.horizon24] + [r.horizon24 for r in rows])
    n_cols = horizon // 24 + (1 if horizon % 24 else 0)
    # row V_N enters first at column N-1, so columns past tmax-1 would pull
    # in characters beyond the supplied range
    n_cols = max(0, min(n_cols, tmax))
    coeffs: dict[int, Fraction] = {}
    if c1 is not None:
        coeffs[1] = Fraction(c1)
    else:
        pass  # closed below by the massless equation
    for k in range(n_cols):
        h = Fraction(1, 4) + k
        rhs = target.multiplicity(h)
        unknowns = []
        acc = Fraction(0)
        for n in range(tmax + 1):
            m = rows[n].multiplicity(h)
            if not m:
                continue
            if n in coeffs:
                acc += coeffs[n] * m
            else:
                unknowns.append((n, m))
        if c1 is None and 1 not in coeffs and any(n == 1 for n, _ in unknowns):
            # close c_1 with the massless-column equation first
            a_rhs = target.atypical
            a_acc = Fraction(0)
            a_unknown = []
            for n in range(tmax + 1):
                a = rows[n].atypical
                if not a:
                    continue
                if n in coeffs:
                    a_acc += coeffs[n] * a
                else:
                    a_unknown.append((n, a))
            if len(a_unknown) == 1 and a_unknown[0][0] == 1:
                coeffs[1] = (a_rhs - a_acc) / a_unknown[0][1]
                unknowns = [(n, m) for n, m in unknowns if n != 1]
                acc += coeffs[1] * rows[1].multiplicity(h)
            else:
                raise NotInSpanError("massless equation does not close c_1")
        if len(unknowns) > 1:
            raise NotInSpanError(
                f"column {k} introduces several unknowns: "
                f"{[n for n, _ in unknowns]}", q24=24 * k)
        if unknowns:
            n, m = unknowns[0]
            coeffs[n] = (rhs - acc) / m
        elif acc != rhs:
            raise NotInSpanError(f"column {k} inconsistent", q24=24 * k)
    out = []
    for n in range(tmax + 1):
        if n not in coeffs:
            raise NotInSpanError(f"c_{n} not determined by {n_cols} columns")
        out.append(coeffs[n])
    return out


def sigma_series(nmax: int, genus: TruncatedSeries) -> list[Fraction]:
    """Coefficients A_0..A_nmax of the mock-modular graded dimension
    Sigma(q) = q^(-1/8)(-2 + sum_(n>=1) A_n q^n)."""
    dec = genus_A_coefficients(nmax, genus)
    out = list(dec.A)
    return out
