"""Integer lattices: Hermite and Smith normal forms, membership, quotients.

Lattices are stored by a canonical row-style Hermite normal form basis
(positive pivots, entries above a pivot reduced into [0, pivot)), so
lattice equality is representation equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "IntegerLattice",
    "AbelianQuotient",
    "SolveResult",
    "hermite_normal_form",
    "smith_normal_form",
    "integer_kernel",
    "hnf_basis",
    "snf_quotient",
    "solve_in_lattice",
]


def _xgcd(a: int, b: int):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hermite_normal_form(rows, track=False):
    """Canonical row HNF of the integer span of ``rows``.

    Returns the list of nonzero HNF rows; with ``track=True`` also a
    unimodular U (rows of coefficients over the inputs) with
    U * rows = [hnf rows; zero rows].
    """
    if not rows:
        return ([], []) if track else []
    n = len(rows[0])
    work = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in work):
        raise ValueError("rows must all have the same length")
    m = len(work)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None

    pivot_row = 0
    for col in range(n):
        sel = None
        for i in range(pivot_row, m):
            if work[i][col]:
                sel = i
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        if track:
            u[pivot_row], u[sel] = u[sel], u[pivot_row]
        for i in range(pivot_row + 1, m):
            while work[i][col]:
                a, b = work[pivot_row][col], work[i][col]
                if b % a == 0:
                    _row_sub(work, u, i, pivot_row, b // a, track)
                else:
                    g, x, y = _xgcd(a, b)
                    _row_combine(work, u, pivot_row, i, x, y, a // g, b // g, track)
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-v for v in work[pivot_row]]
            if track:
                u[pivot_row] = [-v for v in u[pivot_row]]
        p = work[pivot_row][col]
        for i in range(pivot_row):
            q = work[i][col] // p
            if q:
                _row_sub(work, u, i, pivot_row, q, track)
        pivot_row += 1
        if pivot_row == m:
            break
    basis = [work[i] for i in range(pivot_row)]
    if track:
        return basis, u
    return basis


def _row_sub(work, u, i, j, q, track):
    work[i] = [a - q * b for a, b in zip(work[i], work[j])]
    if track:
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]


def _row_combine(work, u, i, j, x, y, ag, bg, track):
    # rows (i, j) <- (x*ri + y*rj, -bg*ri + ag*rj); determinant-1 transform
    ri, rj = work[i], work[j]
    work[i] = [x * a + y * b for a, b in zip(ri, rj)]
    work[j] = [-bg * a + ag * b for a, b in zip(ri, rj)]
    if track:
        si, sj = u[i], u[j]
        u[i] = [x * a + y * b for a, b in zip(si, sj)]
        u[j] = [-bg * a + ag * b for a, b in zip(si, sj)]


def integer_kernel(rows):
    """Basis of {x : x * rows = 0} as integer row vectors."""
    if not rows:
        return []
    hnf, u = hermite_normal_form(rows, track=True)
    rank = len(hnf)
    return [u[i] for i in range(rank, len(rows))]


def smith_normal_form(matrix):
    """Invariant factors d_1 | d_2 | ... (including 1s) of an integer matrix."""
    if not matrix or not matrix[0]:
        return []
    a = [list(map(int, row)) for row in matrix]
    m, n = len(a), len(a[0])
    factors = []
    top = 0
    while top < m and top < n:
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        while True:
            for i in range(top + 1, m):
                while a[i][top]:
                    p, v = a[top][top], a[i][top]
                    if v % p == 0:
                        q = v // p
                        a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    else:
                        g, x, y = _xgcd(p, v)
                        pg, vg = p // g, v // g
                        r_top, r_i = a[top], a[i]
                        a[top] = [x * s + y * t for s, t in zip(r_top, r_i)]
                        a[i] = [-vg * s + pg * t for s, t in zip(r_top, r_i)]
            row_clear = True
            for j in range(top + 1, n):
                while a[top][j]:
                    p, v = a[top][top], a[top][j]
                    if v % p == 0:
                        q = v // p
                        for row in a:
                            row[j] -= q * row[top]
                    else:
                        g, x, y = _xgcd(p, v)
                        pg, vg = p // g, v // g
                        for row in a:
                            s, t = row[top], row[j]
                            row[top] = x * s + y * t
                            row[j] = -vg * s + pg * t
                        row_clear = False
            if row_clear and all(a[i][top] == 0 for i in range(top + 1, m)):
                break
        factors.append(abs(a[top][top]))
        top += 1
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            x, y = factors[i], factors[i + 1]
            if y % x:
                g = gcd(x, y)
                factors[i], factors[i + 1] = g, x * y // g
                changed = True
    return [d for d in factors if d != 0]


@dataclass(frozen=True)
class AbelianQuotient:
    """Finite abelian quotient, invariant factors with 1s omitted."""

    factors: tuple
    rank_deficit: int = 0  # number of infinite cyclic factors

    @property
    def order(self):
        if self.rank_deficit:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    def __str__(self):
        parts = [str(d) for d in self.factors]
        parts.extend(["Z"] * self.rank_deficit)
        return " x ".join(parts) if parts else "1"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of expressing a vector over lattice generators."""

    coords: tuple | None
    certificate: str | None

    @property
    def solved(self):
        return self.coords is not None


class IntegerLattice:
    """Integer lattice given by its canonical HNF basis rows."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, rows=()):
        self.ambient = ambient
        rows = list(rows)
        for r in rows:
            if len(r) != ambient:
                raise ValueError("vector length differs from ambient rank")
        self.basis = [tuple(r) for r in hermite_normal_form(rows)]

    @staticmethod
    def full(n: int) -> "IntegerLattice":
        return IntegerLattice(n, [[1 if i == j else 0 for j in range(n)]
                                  for i in range(n)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, IntegerLattice)
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, tuple(self.basis)))

    def reduce(self, vec):
        """Remainder of vec modulo the basis plus the coordinates used."""
        v = list(map(int, vec))
        coords = []
        for row in self.basis:
            col = next(j for j, x in enumerate(row) if x)
            q = v[col] // row[col]
            coords.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return v, coords

    def contains(self, vec) -> bool:
        v, _ = self.reduce(vec)
        return not any(v)

    def contains_lattice(self, other: "IntegerLattice") -> bool:
        return all(self.contains(row) for row in other.basis)

    def intersect(self, other: "IntegerLattice") -> "IntegerLattice":
        if self.ambient != other.ambient:
            raise ValueError("ambient ranks differ")
        stacked = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        kern = integer_kernel(stacked)
        k = len(self.basis)
        vecs = []
        for x in kern:
            vec = [0] * self.ambient
            for c, row in zip(x[:k], self.basis):
                if c:
                    vec = [a + c * b for a, b in zip(vec, row)]
            vecs.append(vec)
        return IntegerLattice(self.ambient, vecs)

    def index_in(self, sup: "IntegerLattice"):
        """[sup : self]; None when infinite (rank drop)."""
        if not sup.contains_lattice(self):
            raise ValueError("not a sublattice")
        if self.rank < sup.rank:
            return None
        det_sub = 1
        for row in self.basis:
            det_sub *= row[next(j for j, x in enumerate(row) if x)]
        det_sup = 1
        for row in sup.basis:
            det_sup *= row[next(j for j, x in enumerate(row) if x)]
        return det_sub // det_sup

    def __repr__(self):
        return f"IntegerLattice(ambient={self.ambient}, rank={self.rank})"


def hnf_basis(vectors, ambient=None) -> IntegerLattice:
    """Canonical HNF lattice spanned by ``vectors`` (empty -> zero lattice)."""
    vectors = list(vectors)
    if ambient is None:
        if not vectors:
            raise ValueError("ambient rank required for the empty span")
        ambient = len(vectors[0])
    return IntegerLattice(ambient, vectors)


def snf_quotient(sub: IntegerLattice, sup: IntegerLattice) -> AbelianQuotient:
    """Invariant factors of sup/sub; requires sub contained in sup."""
    if sub.ambient != sup.ambient:
        raise ValueError("ambient ranks differ")
    coords = []
    for row in sub.basis:
        v, c = sup.reduce(row)
        if any(v):
            raise ValueError("sub is not contained in sup")
        coords.append(c)
    deficit = sup.rank - sub.rank
    if not coords:
        return AbelianQuotient((), rank_deficit=deficit)
    factors = smith_normal_form(coords)
    return AbelianQuotient(tuple(d for d in factors if d != 1),
                           rank_deficit=deficit)


def solve_in_lattice(vec, generators) -> SolveResult:
    """Canonical integer coordinates of ``vec`` over ``generators``.

    Non-membership returns a certificate naming the first failing
    congruence of the HNF back-substitution.  The canonical solution is
    the HNF back-substitution lifted through the tracked transformation.
    """
    gens = [list(map(int, g)) for g in generators]
    if not gens:
        return SolveResult(None, "no generators")
    hnf, u = hermite_normal_form(gens, track=True)
    v = list(map(int, vec))
    coords_h = [0] * len(hnf)
    for i, row in enumerate(hnf):
        col = next(j for j, x in enumerate(row) if x)
        if any(v[j] for j in range(col)):
            bad = next(j for j in range(col) if v[j])
            return SolveResult(
                None, f"coordinate {bad} has no pivot below it (residue {v[bad]})")
        if v[col] % row[col]:
            return SolveResult(
                None,
                f"coordinate {col}: residue {v[col] % row[col]} modulo pivot {row[col]}")
        q = v[col] // row[col]
        coords_h[i] = q
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        bad = next(j for j, x in enumerate(v) if x)
        return SolveResult(None, f"coordinate {bad}: residue {v[bad]} beyond pivots")
    out = [0] * len(gens)
    for q, urow in zip(coords_h, u):
        if q:
            out = [a + q * b for a, b in zip(out, urow)]
    return SolveResult(tuple(out), None)
