"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are represented by their coordinates in the power basis
1, zeta, ..., zeta^(phi(n)-1) of Q(zeta_n), i.e. as residues modulo the
n-th cyclotomic polynomial.  Coordinates are ``fractions.Fraction``.

Mixed-conductor arithmetic embeds both operands into Q(zeta_lcm); the
compositum conductor is capped to keep accidental blow-ups loud.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CyclotomicNumber",
    "DomainError",
    "zeta",
    "euler_phi",
    "moebius",
]

COMPOSITUM_CAP = 9240

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DomainError(ValueError):
    """Incompatible coefficient domains (e.g. compositum above the cap)."""


def euler_phi(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            result *= p - 1
            m //= p
            while m % p == 0:
                result *= p
                m //= p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def moebius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            den = _cyclotomic_coeffs(d)
            num = _exact_div(num, list(den))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, den monic up to sign.
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact cyclotomic division")
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _power_reduction(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduction of zeta^k for k = 0..2*phi(n)-2 to power-basis vectors."""
    phi = euler_phi(n)
    poly = _cyclotomic_coeffs(n)
    rows: list[tuple[Fraction, ...]] = []
    cur = [_ZERO] * phi
    cur[0] = _ONE
    rows.append(tuple(cur))
    for _ in range(max(2 * phi - 2, phi)):
        nxt = [_ZERO] + cur[:-1]
        top = cur[-1]
        if top:
            # zeta^phi = -(poly[0] + ... + poly[phi-1] zeta^{phi-1})
            for j in range(phi):
                nxt[j] -= top * poly[j]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


@lru_cache(maxsize=None)
def _zeta_traces(n: int) -> tuple[Fraction, ...]:
    """Trace of zeta_n^k over Q for k = 0..phi(n)-1."""
    phi = euler_phi(n)
    out = []
    for k in range(phi):
        if n == 1:
            out.append(Fraction(1))
            continue
        d = n // gcd(n, k)
        out.append(Fraction(moebius(d) * phi, euler_phi(d)))
    return tuple(out)


class CyclotomicNumber:
    """An element of Q(zeta_n) in the power basis modulo Phi_n."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        if n < 1:
            raise DomainError("conductor must be positive")
        phi = euler_phi(n)
        c = list(coeffs)
        if len(c) != phi:
            raise DomainError(f"expected {phi} coordinates for conductor {n}")
        self.n = n
        self.c = tuple(Fraction(x) for x in c)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_rational(n: int, value) -> "CyclotomicNumber":
        phi = euler_phi(n)
        c = [_ZERO] * phi
        c[0] = Fraction(value)
        return CyclotomicNumber(n, c)

    @staticmethod
    def zeta_power(n: int, k: int) -> "CyclotomicNumber":
        phi = euler_phi(n)
        k %= n
        if k < phi:
            c = [_ZERO] * phi
            c[k] = _ONE
            return CyclotomicNumber(n, c)
        # reduce zeta^k by repeated use of the reduction table
        acc = CyclotomicNumber.zeta_power(n, phi - 1)
        for _ in range(k - (phi - 1)):
            acc = acc._mul_zeta()
        return acc

    def _mul_zeta(self) -> "CyclotomicNumber":
        rows = _power_reduction(self.n)
        phi = len(self.c)
        out = [_ZERO] * phi
        for i, ci in enumerate(self.c):
            if not ci:
                continue
            row = rows[i + 1]
            for j in range(phi):
                if row[j]:
                    out[j] += ci * row[j]
        return CyclotomicNumber(self.n, out)

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def _lift(value, n: int) -> "CyclotomicNumber":
        if isinstance(value, CyclotomicNumber):
            if value.n == n:
                return value
            lcm = value.n * n // gcd(value.n, n)
            if lcm > COMPOSITUM_CAP:
                raise DomainError(
                    f"compositum conductor {lcm} above cap {COMPOSITUM_CAP}")
            return value.embed(lcm)
        return CyclotomicNumber.from_rational(n, value)

    def embed(self, m: int) -> "CyclotomicNumber":
        """Embed into Q(zeta_m); m must be a multiple of the conductor."""
        if m == self.n:
            return self
        if m % self.n:
            raise DomainError(f"{m} is not a multiple of conductor {self.n}")
        step = m // self.n
        out = CyclotomicNumber.from_rational(m, 0)
        for k, ck in enumerate(self.c):
            if ck:
                out = out + CyclotomicNumber.zeta_power(m, k * step) * ck
        return out

    # -- ring operations ---------------------------------------------------

    def _binary(self, other, op):
        if isinstance(other, CyclotomicNumber):
            if other.n == self.n:
                return op(self, other)
            lcm = self.n * other.n // gcd(self.n, other.n)
            if lcm > COMPOSITUM_CAP:
                raise DomainError(
                    f"compositum conductor {lcm} above cap {COMPOSITUM_CAP}")
            return op(self.embed(lcm), other.embed(lcm))
        if isinstance(other, (int, Fraction)):
            return op(self, CyclotomicNumber.from_rational(self.n, other))
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, lambda a, b: CyclotomicNumber(
            a.n, [x + y for x, y in zip(a.c, b.c)]))

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: CyclotomicNumber(
            a.n, [x - y for x, y in zip(a.c, b.c)]))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CyclotomicNumber(self.n, [-x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CyclotomicNumber(self.n, [x * f for x in self.c])
        return self._binary(other, CyclotomicNumber._mul_same)

    __rmul__ = __mul__

    def _mul_same(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        phi = len(self.c)
        rows = _power_reduction(self.n)
        out = [_ZERO] * phi
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if not b:
                    continue
                ab = a * b
                row = rows[i + j]
                for k in range(phi):
                    if row[k]:
                        out[k] += ab * row[k]
        return CyclotomicNumber(self.n, out)

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = len(self.c)
        mod = [Fraction(x) for x in _cyclotomic_coeffs(self.n)]
        a = list(self.c)
        # extended gcd of a and Phi_n in Q[x]
        r0, r1 = mod, _trim(a)
        s0, s1 = [_ZERO], [_ONE]
        while _degree(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if _degree(r1) != 0:
            raise ZeroDivisionError("element not invertible modulo Phi_n")
        inv_lead = 1 / r1[0]
        s1 = [x * inv_lead for x in s1]
        _, rem = _poly_divmod(s1, mod)
        rem = rem + [_ZERO] * (phi - len(rem))
        return CyclotomicNumber(self.n, rem[:phi])

    def __pow__(self, n: int) -> "CyclotomicNumber":
        if n < 0:
            return self.inverse() ** (-n)
        out = CyclotomicNumber.from_rational(self.n, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CyclotomicNumber(self.n, [x / f for x in self.c])
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self!r} is not rational")
        return self.c[0]

    def galois(self, a: int) -> "CyclotomicNumber":
        """Apply the automorphism zeta -> zeta^a, gcd(a, n) = 1."""
        if gcd(a, self.n) != 1:
            raise DomainError(f"{a} is not a unit modulo {self.n}")
        out = CyclotomicNumber.from_rational(self.n, 0)
        for k, ck in enumerate(self.c):
            if ck:
                out = out + CyclotomicNumber.zeta_power(self.n, (k * a) % self.n) * ck
        return out

    def trace(self) -> Fraction:
        """Trace to Q (sum of all Galois conjugates)."""
        traces = _zeta_traces(self.n)
        return sum((ck * tk for ck, tk in zip(self.c, traces)), _ZERO)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if isinstance(other, CyclotomicNumber):
            if self.n == other.n:
                return self.c == other.c
            diff = self._binary(other, lambda a, b: CyclotomicNumber(
                a.n, [x - y for x, y in zip(a.c, b.c)]))
            return diff.is_zero()
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.n, self.c))

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({self.c[0]})"
        parts = [f"{c}*z{self.n}^{k}" for k, c in enumerate(self.c) if c]
        return "Cyclo(" + " + ".join(parts) + ")"


def zeta(n: int, k: int = 1) -> CyclotomicNumber:
    """The root of unity zeta_n^k as an exact cyclotomic number."""
    return CyclotomicNumber.zeta_power(n, k)


# -- small Fraction-polynomial helpers (dense, ascending) --------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p or [_ZERO]


def _degree(p: list[Fraction]) -> int:
    p = _trim(list(p))
    if p == [_ZERO]:
        return -1
    return len(p) - 1


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO)
           for i in range(n)]
    return _trim(out)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    b = _trim(list(b))
    if b == [_ZERO]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(1, len(a) - len(b) + 1)
    while _degree(a) >= _degree(b):
        shift = _degree(a) - _degree(b)
        coeff = a[_degree(a)] / b[_degree(b)]
        q[shift] += coeff
        for j in range(len(b)):
            a[shift + j] -= coeff * b[j]
        _trim(a)
        if a == [_ZERO]:
            break
    return _trim(q), _trim(a)
