"""Spherical Bessel functions, terminating hypergeometric sums and the
confluent hypergeometric function 1F1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _extended
from .errors import EvaluationError, ParameterError
from .numerics import EPS, check_degree, compensated_sum

KUMMER_Z_CAP = 1.0e4
KUMMER_DIRECT_LIMIT = 50.0
KUMMER_MAX_TERMS = 100_000
_RESCALE = 1e200


# -- spherical Bessel ---------------------------------------------------------


def spherical_bessel_j(n: int, lam: float) -> float:
    """j_n(lam), the spherical Bessel function of the first kind.

    Upward recurrence from j_0, j_1 when n <= |lam|; otherwise a downward
    (Miller) sweep from order n + max(15, ceil(1.5 n)), normalised against
    whichever of j_0, j_1 is larger in magnitude.
    """
    n = check_degree(n, "n")
    lam = float(lam)
    if lam == 0.0:
        return 1.0 if n == 0 else 0.0
    if lam < 0:
        return (-1) ** n * spherical_bessel_j(n, -lam)
    s, c = math.sin(lam), math.cos(lam)
    j0 = s / lam
    if n == 0:
        return j0
    j1 = s / (lam * lam) - c / lam
    if n <= lam:
        prev, cur = j0, j1
        for k in range(1, n):
            prev, cur = cur, (2 * k + 1) / lam * cur - prev
        return cur
    start = n + max(15, math.ceil(1.5 * n))
    upper, cur = 0.0, 1e-300
    f_n = f1 = 0.0
    for k in range(start, 0, -1):
        # cur = f_k, upper = f_{k+1}; produce f_{k-1}
        lower = (2 * k + 1) / lam * cur - upper
        upper, cur = cur, lower
        if k - 1 == n:
            f_n = cur
        if k - 1 == 1:
            f1 = cur
        if abs(cur) > _RESCALE:
            cur /= _RESCALE
            upper /= _RESCALE
            f_n /= _RESCALE
            f1 /= _RESCALE
    f0 = cur
    if abs(j0) >= abs(j1):
        return f_n * (j0 / f0)
    return f_n * (j1 / f1)


# -- terminating generalized hypergeometric sums ------------------------------


@dataclass(frozen=True)
class HypergeometricSpec:
    numerator: Sequence
    denominator: Sequence
    argument: complex


def terminating_pfq(spec: HypergeometricSpec, m: int) -> complex:
    """sum_{k=0}^{m} prod (num)_k / prod (den)_k z^k / k!.

    ``m`` is the termination index: the numerator is expected to contain -m.
    Term ratios are updated multiplicatively and accumulated with
    compensated summation.
    """
    if int(m) != m or m < 0:
        raise ParameterError(f"termination index must be a nonnegative integer, got {m!r}")
    m = int(m)
    z = complex(spec.argument)
    for d in spec.denominator:
        fd = float(d)
        if fd <= 0 and fd == int(fd) and -fd <= m - 1:
            raise ParameterError(f"denominator parameter {d} is a pole within the sum")
    num = [float(p) for p in spec.numerator]
    den = [float(p) for p in spec.denominator]
    term = 1.0 + 0j
    terms = [term]
    for k in range(m):
        r = 1.0
        for p in num:
            r *= p + k
        for p in den:
            r /= p + k
        term = term * r * z / (k + 1)
        terms.append(term)
    return compensated_sum(terms)


# -- confluent hypergeometric 1F1 ----------------------------------------------


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == int(x)


def _log_abs_gamma(x: float) -> tuple[float, int]:
    """(log|Gamma(x)|, sign Gamma(x)); x must not be a pole."""
    if x > 0:
        return math.lgamma(x), 1
    sign = -1 if math.floor(-x) % 2 == 0 else 1
    return math.lgamma(x), sign


def _series_double(a: float, b: float, z: complex):
    term = 1.0 + 0j
    re, im = [1.0], [0.0]
    mag = 1.0
    running = 1.0 + 0j
    az = abs(z)
    for k in range(KUMMER_MAX_TERMS):
        term = term * (a + k) / ((b + k) * (k + 1)) * z
        re.append(term.real)
        im.append(term.imag)
        t = abs(term)
        mag += t
        running += term
        if term == 0:
            break
        if k + 1 > az + abs(a - b) and t < EPS * 0.25 * abs(running):
            break
    else:
        raise EvaluationError("1F1 series did not converge within 1e5 terms",
                              partial=complex(math.fsum(re), math.fsum(im)),
                              estimate=mag)
    return complex(math.fsum(re), math.fsum(im)), mag


def _asymptotic(a: float, b: float, z: complex):
    """Large-|z| expansion as (value, size of its two parts); None when the
    expansion cannot reach full accuracy."""
    sign = 1 if z.imag >= 0 else -1
    logz = cmath.log(z)

    def tail(p, q, w):
        # sum_s (p)_s (q)_s / s! * w^s, stopped at the smallest term
        total = 1.0 + 0j
        term = 1.0 + 0j
        last = 1.0
        for s in range(200):
            term = term * (p + s) * (q + s) / (s + 1) * w
            t = abs(term)
            if t == 0.0:
                return total
            if t > last:
                return None
            total += term
            last = t
            if t < 2.0 ** -60 * abs(total):
                return total
        return None

    lgb, sgb = _log_abs_gamma(b)
    parts = []
    if not _is_nonpositive_int(a):
        s1 = tail(1 - a, b - a, 1 / z)
        if s1 is None:
            return None
        lga, sga = _log_abs_gamma(a)
        # e^z on its own keeps its phase exact for large |z|
        parts.append(sgb * sga * cmath.exp(z) * cmath.exp((a - b) * logz + lgb - lga) * s1)
    if not _is_nonpositive_int(b - a):
        s2 = tail(a, a - b + 1, -1 / z)
        if s2 is None:
            return None
        lgba, sgba = _log_abs_gamma(b - a)
        parts.append(sgb * sgba * cmath.exp(sign * 1j * math.pi * a - a * logz + lgb - lgba) * s2)
    return sum(parts, 0j), sum(abs(p) for p in parts)


_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _kummer_elementary(a: int, b: int, y: Fraction) -> complex:
    """1F1(a; b; i y) for integers 1 <= a < b, where both asymptotic sums
    terminate:  Gamma(b)/Gamma(a) e^z z^{a-b} 2F0(b-a, 1-a;; 1/z)
    + Gamma(b)/Gamma(b-a) (-z)^{-a} 2F0(a, a-b+1;; -1/z).

    The two sums are exact Gaussian rationals; e^{iy} A + B is formed as
    e^{iy/2} (e^{iy/2} A + e^{-iy/2} B) so the cancellation is resolved
    in extended precision.
    """
    def add(acc, c: Fraction, ipow: int, k: int):
        re, im = _I_POWERS[ipow % 4]
        w = c / y**k
        return acc[0] + re * w, acc[1] + im * w

    fact = math.factorial
    A = (Fraction(0), Fraction(0))
    c = Fraction(fact(b - 1), fact(a - 1))
    for s in range(a):
        # z^{a-b-s} = (-i)^{b-a+s} y^{a-b-s}
        A = add(A, c, -(b - a + s), b - a + s)
        c = c * (1 - a + s) * (b - a + s) / (s + 1)
    B = (Fraction(0), Fraction(0))
    c = Fraction(fact(b - 1), fact(b - a - 1))
    for s in range(b - a):
        # (-z)^{-a-s} = i^{a+s} y^{-a-s}
        B = add(B, c, a + s, a + s)
        c = c * (a + s) * (a - b + 1 + s) / (s + 1)
    half = y / 2
    return cmath.exp(0.5j * float(y)) * _extended.exp_combination(B, A, half)


def kummer_1f1(a, b, z) -> complex:
    """Confluent hypergeometric function 1F1(a; b; z).

    Double-precision series when it is well conditioned (|z| <= 50 and the
    term magnitudes do not swamp the sum), the large-|z| asymptotic
    expansion when it converges to full accuracy, and otherwise the same
    series summed in adaptive fixed-point arithmetic.
    """
    fa, fb = float(a), float(b)
    z = complex(z)
    if _is_nonpositive_int(fb) and not (_is_nonpositive_int(fa) and fa > fb):
        raise ParameterError(f"1F1 denominator parameter b={b} is a nonpositive integer")
    az = abs(z)
    if az > KUMMER_Z_CAP:
        raise ParameterError(f"|z| = {az:g} exceeds the 1F1 argument cap {KUMMER_Z_CAP:g}")
    if z == 0:
        return 1.0 + 0j
    if z.imag == 0.0 and z.real < 0:
        # Kummer reflection to a positive argument avoids alternating terms
        return cmath.exp(z) * kummer_1f1(fb - fa, fb, -z)
    if az <= KUMMER_DIRECT_LIMIT:
        val, mag = _series_double(fa, fb, z)
        if mag * EPS <= 1e-14 * abs(val):
            return val
    if z.real == 0.0 and fa == int(fa) and fb == int(fb) and 1 <= fa < fb:
        return _kummer_elementary(int(fa), int(fb), Fraction(z.imag))
    if az > KUMMER_DIRECT_LIMIT:
        found = _asymptotic(fa, fb, z)
        if found is not None:
            val, mag = found
            if 8 * mag * EPS <= 1e-14 * abs(val):
                return val
    fr_a = a if isinstance(a, Fraction) else Fraction(fa)
    fr_b = b if isinstance(b, Fraction) else Fraction(fb)
    return _extended.hyp1f1_fixed(fr_a, fr_b, Fraction(z.real), Fraction(z.imag),
                                  KUMMER_MAX_TERMS)
