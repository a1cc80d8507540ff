"""Dedekind eta, Jacobi theta functions, and the index-1 weak Jacobi forms.

Conventions (the single source of truth for signs):
  * theta3(y;q) = sum_n y^n q^(n^2/2), theta4 with (-1)^n,
    theta2 = sum over n in Z+1/2, theta1 = -i * sum (-1)^(n-1/2) ... so that
    theta1/eta^3 equals the product
        -i (y^(1/2) - y^(-1/2)) prod (1-y q^n)(1-y^(-1) q^n)(1-q^n)^(-2)
    coefficientwise (the factor -i is carried exactly in Q(i)).
  * phi_m21 := (theta1/eta^3)^2, with q^0 part -(y - 2 + 1/y); it vanishes
    at the Euler point y=1.
  * phi_01 is the standard weight-0 index-1 form, q^0 part y + 10 + 1/y,
    value 12 at the Euler point; twice phi_01 is the K3 elliptic genus.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .cyclotomic import CyclotomicNumber, DomainError, zeta
from .series import INF24, TruncatedSeries, binomial_factor

__all__ = [
    "dedekind_eta",
    "eta_power",
    "jacobi_theta",
    "theta_null",
    "phi_function",
    "weak_jacobi_phi",
    "euler_specialization",
    "ComplexApprox",
    "numeric_eval",
]


def dedekind_eta(trunc24: int) -> TruncatedSeries:
    """eta(q) = q^(1/24) prod_(n>=1) (1 - q^n), truncated."""
    if trunc24 <= 1:
        raise ValueError("truncation must exceed the leading exponent 1/24")
    s = TruncatedSeries.monomial(Fraction(1), q24=1, trunc24=trunc24)
    n = 1
    while 1 + 24 * n < trunc24:
        s = s * binomial_factor(Fraction(-1), 24 * n, 0, 0)
        n += 1
    return s


def eta_power(power: int, trunc24: int) -> TruncatedSeries:
    """eta(q)^power for any integer power (negative powers invert)."""
    if power == 0:
        return TruncatedSeries.const(Fraction(1), trunc24)
    if power > 0:
        return (dedekind_eta(trunc24) ** power).truncate(trunc24)
    k = -power
    inv = dedekind_eta(trunc24 + k + 1).invert()
    return (inv ** k).truncate(trunc24)


def jacobi_theta(kind: int, trunc24: int) -> TruncatedSeries:
    """The classical theta_1..theta_4 as (y, q) series."""
    if kind not in (1, 2, 3, 4):
        raise ValueError("theta kind must be 1..4")
    terms = {}
    if kind in (3, 4):
        n = 0
        while 12 * n * n < trunc24:
            for s in ((n,) if n == 0 else (n, -n)):
                c = Fraction(-1 if (kind == 4 and n % 2) else 1)
                terms[(12 * n * n, 2 * s, 0)] = c
            n += 1
    else:
        k = 0
        while 3 * (2 * k + 1) ** 2 < trunc24:
            for m in (k, -k - 1):  # n = m + 1/2 runs over +-(k+1/2)
                q24 = 3 * (2 * k + 1) ** 2
                if kind == 2:
                    terms[(q24, 2 * m + 1, 0)] = Fraction(1)
                else:
                    # theta1 = -i sum (-1)^m y^(m+1/2) q^((m+1/2)^2/2)
                    sign = -1 if m % 2 else 1
                    terms[(q24, 2 * m + 1, 0)] = zeta(4, 3) * sign
            k += 1
    return TruncatedSeries(terms, trunc24, _clean=True)


def theta_null(kind: int, trunc24: int) -> TruncatedSeries:
    """Theta constant: the y -> 1 specialization as a pure q-series."""
    th = jacobi_theta(kind, trunc24)
    out = {}
    for (q24, _y2, _z), c in th.terms.items():
        key = (q24, 0, 0)
        out[key] = out.get(key, Fraction(0)) + c
    return TruncatedSeries(out, trunc24)


def phi_function(trunc24: int) -> TruncatedSeries:
    """phi = theta1/eta^3; coefficients are purely imaginary in Q(i)."""
    return jacobi_theta(1, trunc24 + 3) * eta_power(-3, trunc24 + 3)


def weak_jacobi_phi(weight: int, trunc24: int) -> TruncatedSeries:
    """The weak Jacobi forms phi_{0,1} (weight=0) and phi_{-2,1} (weight=-2)."""
    if weight == -2:
        sq = jacobi_theta(1, trunc24 + 6) ** 2
        return (sq * eta_power(-6, trunc24 + 6)).truncate(trunc24).as_rational()
    if weight != 0:
        raise ValueError("weight must be 0 or -2")
    t = trunc24 + 12
    total = TruncatedSeries.zero(trunc24)
    for kind in (2, 3, 4):
        num = jacobi_theta(kind, t) ** 2
        if kind == 2:
            num = _halve_y_to_int(num)
        den = theta_null(kind, t) ** 2
        total = total + (num * den.invert()).truncate(trunc24)
    return (total * 4).as_rational()


def _halve_y_to_int(s: TruncatedSeries) -> TruncatedSeries:
    # theta2^2 has integral y-exponents; renormalize stray zero coefficients
    for (_q, y2, _z) in s.terms:
        if y2 % 2:
            raise DomainError("expected integral y-exponents")
    return s


def euler_specialization(s: TruncatedSeries) -> TruncatedSeries:
    """Specialize the Jacobi variable to the Euler point (z = 0, y = 1).

    In the paper's chi_y bookkeeping this is the "y = -1" specialization;
    the stored series follow the chi_{-y} (moonshine) convention, where
    the same point is y = +1.
    """
    out = {}
    for (q24, _y2, z), c in s.terms.items():
        key = (q24, 0, z)
        acc = out.get(key, Fraction(0)) + c
        out[key] = acc
    return TruncatedSeries(out, s.trunc24)


@dataclass(frozen=True)
class ComplexApprox:
    """A numeric value with a crude geometric tail estimate attached."""

    value: complex
    error: float

    def close_to(self, other: complex, slack: float = 0.0) -> bool:
        return abs(self.value - other) <= self.error + slack


def numeric_eval(s: TruncatedSeries, tau: complex, u: complex = 0.0,
                 v: complex = 0.0) -> ComplexApprox:
    """Evaluate at q = e^(2 pi i tau), y = e^(2 pi i u), z = e^(2 pi i v).

    The error field bounds the truncation tail under the assumption of
    geometric domination beyond the truncation order, with the ratio
    estimated from the computed slices; it is meant for spot checks of
    transformation laws, never for exact assertions.
    """
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    q1 = cmath.exp(2j * cmath.pi * tau / 24)   # q^(1/24)
    y1 = cmath.exp(1j * cmath.pi * u)          # y^(1/2)
    z1 = cmath.exp(2j * cmath.pi * v)
    total = 0j
    slice_abs: dict[int, float] = {}
    for (q24, y2, z), c in s.terms.items():
        cv = _coeff_complex(c)
        term = cv * q1 ** q24 * y1 ** y2 * z1 ** z
        total += term
        slice_abs[q24] = slice_abs.get(q24, 0.0) + abs(cv) * abs(y1) ** y2 * abs(z1) ** z
    if s.trunc24 >= INF24:
        return ComplexApprox(total, 0.0)
    r = abs(q1)
    if not slice_abs:
        return ComplexApprox(total, (r ** s.trunc24) / max(1e-12, 1 - r))
    orders = sorted(slice_abs)
    growth = 1.0
    for a, b in zip(orders, orders[1:]):
        if slice_abs[a] > 0 and slice_abs[b] > slice_abs[a]:
            growth = max(growth, (slice_abs[b] / slice_abs[a]) ** (1.0 / (b - a)))
    rho = growth * r
    amp = max(slice_abs.values())
    if rho >= 1.0:
        return ComplexApprox(total, float("inf"))
    tail = amp * growth ** (s.trunc24 - orders[0]) * (r ** s.trunc24) / (1 - rho)
    return ComplexApprox(total, tail)


def _coeff_complex(c) -> complex:
    if isinstance(c, CyclotomicNumber):
        w = cmath.exp(2j * cmath.pi / c.n)
        return sum(float(x) * w ** k for k, x in enumerate(c.c))
    return complex(Fraction(c))


def theta3_shift_invariance_window(trunc24: int):
    """Envelope data for the index-1/2 elliptic shift y -> y q of theta3."""
    def bound(q24: int) -> int:
        return 2 * isqrt(max(q24, 0) // 12) + 2

    return bound, max(48, trunc24 // 2)
