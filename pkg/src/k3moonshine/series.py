"""Truncated multigraded Laurent series with exact coefficients.

The grading is (q, y, z) with
  * q-exponents in (1/24)*Z, stored as integer multiples of 1/24,
  * y-exponents in (1/2)*Z, stored as integer multiples of 1/2 (the
    doubled grading keeps theta_1/theta_2 half-powers integral),
  * z-exponents in Z.

Coefficients are ``fractions.Fraction`` or ``CyclotomicNumber``;
rationals embed into any cyclotomic field on demand.  Every series
carries a truncation order: all stored q-exponents are strictly below
it, and arithmetic propagates the guaranteed-valid truncation.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .cyclotomic import CyclotomicNumber, DomainError

__all__ = [
    "TruncatedSeries",
    "InsufficientPrecisionError",
    "NotInSpanError",
    "INF24",
]

# Sentinel truncation for exactly-known series (constants, monomials).
INF24 = 1 << 62

_ZERO = Fraction(0)


class InsufficientPrecisionError(ArithmeticError):
    """A substitution cannot guarantee the requested truncation order."""


class NotInSpanError(ArithmeticError):
    """Exact division or decomposition failed; carries the first offender."""

    def __init__(self, message, q24=None):
        super().__init__(message)
        self.q24 = q24


def _is_zero_coeff(c) -> bool:
    if isinstance(c, CyclotomicNumber):
        return c.is_zero()
    return not c


class TruncatedSeries:
    __slots__ = ("terms", "trunc24")

    def __init__(self, terms: dict, trunc24: int, *, _clean: bool = False):
        if _clean:
            self.terms = terms
        else:
            self.terms = {k: v for k, v in terms.items()
                          if k[0] < trunc24 and not _is_zero_coeff(v)}
        self.trunc24 = trunc24

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(trunc24: int = INF24) -> "TruncatedSeries":
        return TruncatedSeries({}, trunc24, _clean=True)

    @staticmethod
    def const(value, trunc24: int = INF24) -> "TruncatedSeries":
        return TruncatedSeries.monomial(value, 0, 0, 0, trunc24)

    @staticmethod
    def monomial(value, q24: int = 0, y2: int = 0, z: int = 0,
                 trunc24: int = INF24) -> "TruncatedSeries":
        if isinstance(value, int):
            value = Fraction(value)
        if _is_zero_coeff(value) or q24 >= trunc24:
            return TruncatedSeries.zero(trunc24)
        return TruncatedSeries({(q24, y2, z): value}, trunc24, _clean=True)

    # -- inspection -----------------------------------------------------------

    @property
    def min_q24(self):
        """Leading q-exponent in 24th units, or None for the zero series."""
        return min((k[0] for k in self.terms), default=None)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, q, y=0, z=0):
        """Exact coefficient at q^q y^y z^z (Fraction exponents allowed)."""
        q24 = _to_units(q, 24, "q")
        y2 = _to_units(y, 2, "y")
        if q24 >= self.trunc24:
            raise InsufficientPrecisionError(
                f"coefficient at q24={q24} beyond truncation {self.trunc24}")
        return self.terms.get((q24, y2, z), _ZERO)

    def q_slice(self, q24: int) -> dict:
        """All (y2, z) -> coeff at the given q-exponent (in 24th units)."""
        if q24 >= self.trunc24:
            raise InsufficientPrecisionError(
                f"slice at q24={q24} beyond truncation {self.trunc24}")
        return {(y2, z): c for (e, y2, z), c in self.terms.items() if e == q24}

    def q_support(self) -> list[int]:
        return sorted({k[0] for k in self.terms})

    def y2_bounds(self):
        if not self.terms:
            return (0, 0)
        ys = [k[1] for k in self.terms]
        return (min(ys), max(ys))

    def z_bounds(self):
        if not self.terms:
            return (0, 0)
        zs = [k[2] for k in self.terms]
        return (min(zs), max(zs))

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = TruncatedSeries.const(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        trunc = min(self.trunc24, other.trunc24)
        out = {k: v for k, v in self.terms.items() if k[0] < trunc}
        for k, v in other.terms.items():
            if k[0] >= trunc:
                continue
            if k in out:
                s = out[k] + v
                if _is_zero_coeff(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return TruncatedSeries(out, trunc, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({k: -v for k, v in self.terms.items()},
                               self.trunc24, _clean=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = TruncatedSeries.const(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "TruncatedSeries":
        if isinstance(value, int):
            value = Fraction(value)
        if _is_zero_coeff(value):
            return TruncatedSeries.zero(self.trunc24)
        return TruncatedSeries({k: v * value for k, v in self.terms.items()},
                               self.trunc24, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        trunc = _mul_trunc(self, other)
        if self.is_zero() or other.is_zero():
            return TruncatedSeries.zero(trunc)
        a = _grouped(self)
        b = _grouped(other)
        out: dict = {}
        for qa, terms_a in a:
            if qa + b[0][0] >= trunc:
                break
            for qb, terms_b in b:
                q = qa + qb
                if q >= trunc:
                    break
                for (ya, za), ca in terms_a:
                    for (yb, zb), cb in terms_b:
                        key = (q, ya + yb, za + zb)
                        prod = ca * cb
                        if key in out:
                            s = out[key] + prod
                            if _is_zero_coeff(s):
                                del out[key]
                            else:
                                out[key] = s
                        elif not _is_zero_coeff(prod):
                            out[key] = prod
        return TruncatedSeries(out, trunc, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.invert() ** (-n)
        out = TruncatedSeries.const(Fraction(1), self.trunc24 if n == 0 else INF24)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- inversion and exact division ------------------------------------------

    def invert(self, trunc24=None) -> "TruncatedSeries":
        """Inverse of a series whose leading q-slice is a single monomial.

        ``trunc24`` requests a truncation order for the result (required
        when inverting an exactly-known series).
        """
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero series")
        m = self.min_q24
        if trunc24 is not None:
            return self.truncate(min(self.trunc24, trunc24 + 2 * m)).invert()
        if self.trunc24 >= INF24:
            raise ValueError("specify trunc24 when inverting an exact series")
        lead = self.q_slice(m)
        if len(lead) != 1:
            raise NotInSpanError(
                "leading q-slice is not a monomial; use divide_exact", q24=m)
        (y2, z), c = next(iter(lead.items()))
        cinv = c.inverse() if isinstance(c, CyclotomicNumber) else 1 / c
        lead_inv = TruncatedSeries.monomial(cinv, -m, -y2, -z)
        u = lead_inv * self - TruncatedSeries.const(Fraction(1))
        if u.is_zero():
            return TruncatedSeries(lead_inv.terms, self.trunc24 - 2 * m,
                                   _clean=True)
        gap = u.min_q24
        # Horner evaluation of (1+u)^{-1} = 1 - u + u^2 - ...
        depth = max(0, (u.trunc24 - 1) // gap + 1)
        r = TruncatedSeries.const(Fraction(1), u.trunc24)
        for _ in range(depth):
            r = TruncatedSeries.const(Fraction(1), u.trunc24) - u * r
        return lead_inv * r

    def divide_exact(self, divisor: "TruncatedSeries") -> "TruncatedSeries":
        """Long division by a series with z-free leading q-slice.

        Requires the division to be exact slice by slice; raises
        NotInSpanError (with the offending q-order) otherwise.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero series")
        dmin = divisor.min_q24
        dlead = divisor.q_slice(dmin)
        if any(z for (_, z) in dlead):
            raise NotInSpanError("divisor leading slice must be z-free", q24=dmin)
        nmin = self.min_q24 if not self.is_zero() else self.trunc24
        trunc = min(self.trunc24, divisor.trunc24 + nmin - dmin) - dmin
        if trunc >= INF24 // 2:
            raise ValueError("specify finite truncations before dividing")
        if len(dlead) == 1:
            return self * divisor.invert(trunc24=trunc - nmin)
        rem = TruncatedSeries({k: v for k, v in self.terms.items()},
                              min(self.trunc24, trunc + dmin), _clean=True)
        out: dict = {}
        lead_poly = {y2: c for (y2, _), c in dlead.items()}
        while not rem.is_zero() and rem.min_q24 - dmin < trunc:
            e = rem.min_q24
            slice_ = rem.q_slice(e)
            q_slice = _laurent_divide(slice_, lead_poly, e)
            piece = TruncatedSeries(
                {(e - dmin, y2, z): c for (y2, z), c in q_slice.items()},
                INF24, _clean=True)
            for k, v in piece.terms.items():
                out[k] = v
            rem = rem - piece * divisor
        return TruncatedSeries(out, trunc, _clean=True)

    # -- substitutions ----------------------------------------------------------

    def substitute_q_shift(self, s24_per_y2: int, extra_q24: int = 0,
                           extra_y2: int = 0, *, y2_bound=None,
                           settle24: int = 0, min_trunc24=None,
                           sign_by_y=None) -> "TruncatedSeries":
        """Map each term y^m q^e -> y^(m + extra/2) q^(e + s*m + extra_q).

        ``s24_per_y2`` is the q-shift (in 24th units) per unit of the
        doubled y-grading, so y -> y q^(1/2) is s24_per_y2=6 with
        extra_q24=6, extra_y2=2.  The guaranteed truncation of the result
        is computed from ``y2_bound``: a callable q24 -> max |y2| valid
        for ALL terms of the mathematical series (defaults to the linear
        envelope 4 + (q24-min)/12, the index<=2 theta envelope), together
        with ``settle24``, a point beyond which the shifted exponent is
        nondecreasing in q24.  ``sign_by_y`` optionally multiplies each
        coefficient by sign_by_y(y2).
        """
        if self.is_zero():
            return TruncatedSeries.zero(
                self.trunc24 if self.trunc24 >= INF24 else self.trunc24 + extra_q24)
        m0 = self.min_q24
        if y2_bound is None:
            def y2_bound(q24, _m0=m0):
                return 4 + max(0, q24 - _m0) // 24
            settle24 = m0
        if self.trunc24 < INF24:
            # stored terms must respect the envelope, otherwise the tail
            # extrapolation would be unsound
            for (q24, y2, z) in self.terms:
                if abs(y2) > y2_bound(q24):
                    raise InsufficientPrecisionError(
                        f"term (q24={q24}, y2={y2}) violates the y-envelope")
        out: dict = {}
        if self.trunc24 >= INF24:
            trunc = INF24
        else:
            lo = self.trunc24
            hi = max(lo, settle24) + 1
            trunc = min(q24 - abs(s24_per_y2) * y2_bound(q24) + extra_q24
                        for q24 in range(lo, hi + 1))
        if min_trunc24 is not None and trunc < min_trunc24:
            raise InsufficientPrecisionError(
                f"guaranteed truncation {trunc} below requested {min_trunc24}")
        for (q24, y2, z), c in self.terms.items():
            nq = q24 + s24_per_y2 * y2 + extra_q24
            if nq >= trunc:
                continue
            if sign_by_y is not None:
                c = c * sign_by_y(y2)
                if _is_zero_coeff(c):
                    continue
            key = (nq, y2 + extra_y2, z)
            if key in out:
                s = out[key] + c
                if _is_zero_coeff(s):
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = c
        return TruncatedSeries(out, trunc, _clean=True)

    def spectral_flow(self, direction: int = 1, *, min_trunc24=None,
                      y2_bound=None, settle24: int = 0) -> "TruncatedSeries":
        """NS <-> Ramond flow: ch(y;q) -> q^(1/4) y^(dir) ch(y q^(dir/2); q)."""
        if direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        return self.substitute_q_shift(6 * direction, 6, 2 * direction,
                                       y2_bound=y2_bound, settle24=settle24,
                                       min_trunc24=min_trunc24)

    def substitute_y_value(self, value) -> "TruncatedSeries":
        """Specialize y to an exact scalar; y-exponents must be integral."""
        out: dict = {}
        for (q24, y2, z), c in self.terms.items():
            if y2 % 2:
                raise DomainError("cannot specialize half-integral y-power")
            m = y2 // 2
            if isinstance(value, CyclotomicNumber):
                factor = value ** m if m >= 0 else value.inverse() ** (-m)
            else:
                factor = Fraction(value) ** m
            piece = c * factor
            key = (q24, 0, z)
            acc = out.get(key, _ZERO) + piece
            if _is_zero_coeff(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return TruncatedSeries(out, self.trunc24, _clean=True)

    def twist_y(self, root: CyclotomicNumber) -> "TruncatedSeries":
        """Substitute y -> root * y for a root of unity (integral y only)."""
        out: dict = {}
        for (q24, y2, z), c in self.terms.items():
            if y2 % 2:
                raise DomainError("cannot twist half-integral y-power")
            m = y2 // 2
            factor = root ** m if m >= 0 else root.inverse() ** (-m)
            nc = c * factor
            if not _is_zero_coeff(nc):
                out[(q24, y2, z)] = nc
        return TruncatedSeries(out, self.trunc24, _clean=True)

    def substitute_y_sign(self) -> "TruncatedSeries":
        """Substitute y -> -y (integral y-exponents only)."""
        out = {}
        for (q24, y2, z), c in self.terms.items():
            if y2 % 2:
                raise DomainError("cannot flip sign of half-integral y-power")
            out[(q24, y2, z)] = -c if (y2 // 2) % 2 else c
        return TruncatedSeries(out, self.trunc24, _clean=True)

    def substitute_z_value(self, value) -> "TruncatedSeries":
        out: dict = {}
        for (q24, y2, z), c in self.terms.items():
            factor = Fraction(value) ** z
            key = (q24, y2, 0)
            acc = out.get(key, _ZERO) + c * factor
            if _is_zero_coeff(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return TruncatedSeries(out, self.trunc24, _clean=True)

    def z_coefficient(self, z: int) -> "TruncatedSeries":
        return TruncatedSeries(
            {(q24, y2, 0): c for (q24, y2, zz), c in self.terms.items() if zz == z},
            self.trunc24, _clean=True)

    def y_mirror(self) -> "TruncatedSeries":
        """Substitute y -> 1/y."""
        return TruncatedSeries(
            {(q24, -y2, z): c for (q24, y2, z), c in self.terms.items()},
            self.trunc24, _clean=True)

    # -- predicates & conversions -------------------------------------------------

    def is_y_symmetric(self) -> bool:
        return self == self.y_mirror()

    def is_y_free(self) -> bool:
        return all(y2 == 0 for (_, y2, _) in self.terms)

    def is_z_free(self) -> bool:
        return all(z == 0 for (_, _, z) in self.terms)

    def as_rational(self) -> "TruncatedSeries":
        """Force all coefficients to Fraction; error on irrational values."""
        out = {}
        for k, c in self.terms.items():
            if isinstance(c, CyclotomicNumber):
                out[k] = c.rational_value()
            else:
                out[k] = c
        return TruncatedSeries(out, self.trunc24, _clean=True)

    def map_coefficients(self, fn) -> "TruncatedSeries":
        return TruncatedSeries({k: fn(v) for k, v in self.terms.items()},
                               self.trunc24)

    def truncate(self, trunc24: int) -> "TruncatedSeries":
        if trunc24 > self.trunc24:
            raise InsufficientPrecisionError(
                f"cannot extend truncation {self.trunc24} to {trunc24}")
        return TruncatedSeries(self.terms, trunc24)

    def __eq__(self, other):
        """Equality of all coefficients up to the minimum truncation."""
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = TruncatedSeries.const(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self.trunc24, other.trunc24)
        a = {k: v for k, v in self.terms.items() if k[0] < t}
        b = {k: v for k, v in other.terms.items() if k[0] < t}
        if set(a) != set(b):
            return False
        return all(_is_zero_coeff(a[k] - b[k]) for k in a)

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"O(q^{Fraction(self.trunc24, 24)})" if self.trunc24 < INF24 else "0"
        parts = []
        for (q24, y2, z) in sorted(self.terms)[:8]:
            c = self.terms[(q24, y2, z)]
            mon = []
            if q24:
                mon.append(f"q^{Fraction(q24, 24)}")
            if y2:
                mon.append(f"y^{Fraction(y2, 2)}")
            if z:
                mon.append(f"z^{z}")
            parts.append(f"{c}" + ("*" + "*".join(mon) if mon else ""))
        more = "" if len(self.terms) <= 8 else f" + ... ({len(self.terms)} terms)"
        tail = f" + O(q^{Fraction(self.trunc24, 24)})" if self.trunc24 < INF24 else ""
        return " + ".join(parts) + more + tail


def _to_units(x, scale: int, name: str) -> int:
    f = Fraction(x) * scale
    if f.denominator != 1:
        raise ValueError(f"{name}-exponent {x} not in (1/{scale})Z")
    return f.numerator


def _mul_trunc(a: TruncatedSeries, b: TruncatedSeries) -> int:
    bounds = []
    if b.terms:
        bounds.append(a.trunc24 + b.min_q24)
    if a.terms:
        bounds.append(b.trunc24 + a.min_q24)
    if not bounds:
        bounds.append(a.trunc24 + b.trunc24)
    return min(min(bounds), INF24)


def _grouped(s: TruncatedSeries):
    groups: dict = {}
    for (q24, y2, z), c in s.terms.items():
        groups.setdefault(q24, []).append(((y2, z), c))
    return sorted(groups.items())


def _laurent_divide(numer: dict, denom: dict, q24: int) -> dict:
    """Exact division of Laurent polys; numer keyed (y2, z), denom by y2."""
    out: dict = {}
    dmin = min(denom)
    dmax = max(denom)
    dlead = denom[dmax]
    dlead_inv = dlead.inverse() if isinstance(dlead, CyclotomicNumber) else 1 / dlead
    # split the numerator by z-stratum; the denominator is z-free
    strata: dict = {}
    for (y2, z), c in numer.items():
        strata.setdefault(z, {})[y2] = c
    for z, poly in strata.items():
        work = dict(poly)
        while work:
            top = max(work)
            low = min(work)
            if top - dmax < low - dmin:
                raise NotInSpanError(
                    f"q-slice at q24={q24} not divisible by leading slice",
                    q24=q24)
            shift = top - dmax
            coeff = work[top] * dlead_inv
            out[(shift, z)] = coeff
            for y2, d in denom.items():
                key = y2 + shift
                acc = work.get(key, _ZERO) - coeff * d
                if _is_zero_coeff(acc):
                    work.pop(key, None)
                else:
                    work[key] = acc
    return out


def geometric_factor(coeff, q24: int, y2: int, z: int, trunc24: int,
                     power: int = 1) -> TruncatedSeries:
    """(1 - coeff * q^(q24/24) y^(y2/2) z^z)^(-power) expanded to trunc24.

    Requires q24 > 0 so the expansion truncates.
    """
    if q24 <= 0:
        raise ValueError("geometric expansion needs a positive q-exponent")
    if trunc24 >= INF24:
        raise ValueError("geometric expansion needs a finite truncation")
    if isinstance(coeff, int):
        coeff = Fraction(coeff)
    terms: dict = {(0, 0, 0): Fraction(1)}
    k = 1
    c_pow = coeff
    # multiplicity of the k-th power for (1-x)^-power is C(k+power-1, power-1)
    while k * q24 < trunc24:
        val = c_pow * comb(k + power - 1, power - 1)
        if not _is_zero_coeff(val):
            terms[(k * q24, k * y2, k * z)] = val
        k += 1
        c_pow = c_pow * coeff
    return TruncatedSeries(terms, trunc24, _clean=True)


def binomial_factor(coeff, q24: int, y2: int, z: int,
                    trunc24: int = INF24) -> TruncatedSeries:
    """(1 + coeff * q^(q24/24) y^(y2/2) z^z) as an exact series."""
    terms = {(0, 0, 0): Fraction(1)}
    if not _is_zero_coeff(coeff) and q24 < trunc24:
        terms[(q24, y2, z)] = Fraction(coeff) if isinstance(coeff, int) else coeff
    return TruncatedSeries(terms, trunc24, _clean=True)


def prune_y_window(s: TruncatedSeries, y2_lo: int, y2_hi: int) -> TruncatedSeries:
    """Drop terms outside a y-window (use only when the window is known
    to contain every exponent consumed downstream)."""
    return TruncatedSeries(
        {k: v for k, v in s.terms.items() if y2_lo <= k[1] <= y2_hi},
        s.trunc24, _clean=True)


def prune_z_window(s: TruncatedSeries, z_lo: int, z_hi: int) -> TruncatedSeries:
    return TruncatedSeries(
        {k: v for k, v in s.terms.items() if z_lo <= k[2] <= z_hi},
        s.trunc24, _clean=True)
