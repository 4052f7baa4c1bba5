"""Fixed-point big-integer arithmetic for the few places where double
precision cannot carry a cancelling sum.

Values are Python ints scaled by 2**bits.  Inputs are exact Fractions
(a float argument is exact as a binary Fraction), so the only rounding is
one floor division per step.  Every routine runs twice at different
precisions and accepts the result only when the two agree.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import EvaluationError

_AGREE_BITS = 62
_EXTRA_BITS = 48


def _fix_to_float(v: int, bits: int) -> float:
    return float(Fraction(v, 1 << bits))


def _agree(a: tuple[int, int], b: tuple[int, int], shift: int) -> bool:
    # a at precision p, b at precision p + shift
    ar, ai = a[0] << shift, a[1] << shift
    dr, di = abs(ar - b[0]), abs(ai - b[1])
    mag = max(abs(b[0]), abs(b[1]))
    if mag == 0:
        return dr == 0 and di == 0
    return max(dr, di).bit_length() <= mag.bit_length() - _AGREE_BITS


def _log2_max_term_1f1(a: float, b: float, az: float, limit: int) -> tuple[float, int]:
    """log2 of the largest |term| of 1F1(a;b;z) and a term count estimate."""
    lt = 0.0
    best = 0.0
    k = 0
    while k < limit:
        num = abs(a + k)
        den = abs(b + k) * (k + 1)
        if num == 0.0:
            return best, k + 1
        lt += math.log2(num * az / den)
        best = max(best, lt)
        k += 1
        if k > az + abs(a - b) + 10 and lt < best - 80:
            break
    return best, k


def hyp1f1_fixed(a: Fraction, b: Fraction, zr: Fraction, zi: Fraction,
                 max_terms: int = 100_000) -> complex:
    """1F1(a; b; z) summed in fixed point with adaptive precision."""
    az = math.hypot(float(zr), float(zi))
    log2_max, _ = _log2_max_term_1f1(float(a), float(b), az, max_terms)
    bits = 96 + int(math.ceil(log2_max))
    for _ in range(12):
        lo = _hyp1f1_fixed_at(a, b, zr, zi, bits, max_terms)
        hi = _hyp1f1_fixed_at(a, b, zr, zi, bits + _EXTRA_BITS, max_terms)
        if _agree(lo, hi, _EXTRA_BITS):
            return complex(_fix_to_float(hi[0], bits + _EXTRA_BITS),
                           _fix_to_float(hi[1], bits + _EXTRA_BITS))
        bits *= 2
    raise EvaluationError("1F1 fixed-point evaluation did not stabilise",
                          partial=complex(_fix_to_float(hi[0], bits), _fix_to_float(hi[1], bits)))


def _hyp1f1_fixed_at(a, b, zr, zi, bits, max_terms):
    q = math.lcm(zr.denominator, zi.denominator)
    pr = zr.numerator * (q // zr.denominator)
    pi = zi.numerator * (q // zi.denominator)
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    one = 1 << bits
    tr, ti = one, 0
    sr, si = one, 0
    az = math.hypot(float(zr), float(zi))
    for k in range(max_terms):
        num = (an + k * ad) * bd
        den = (bn + k * bd) * ad * (k + 1) * q
        if den == 0:
            raise EvaluationError("1F1 denominator parameter hit a pole")
        nr = tr * pr - ti * pi
        ni = tr * pi + ti * pr
        tr = (nr * num) // den
        ti = (ni * num) // den
        sr += tr
        si += ti
        if num == 0 or (tr == 0 and ti == 0):
            return sr, si
        if k + 1 > az + abs(float(a) - float(b)):
            tmag = max(abs(tr), abs(ti)).bit_length()
            if tmag <= 8:
                return sr, si
    raise EvaluationError("1F1 series did not converge within the term budget",
                          partial=complex(_fix_to_float(sr, bits), _fix_to_float(si, bits)))


def _atan_inv_fixed(q: int, bits: int) -> int:
    """atan(1/q) scaled by 2**bits."""
    total = 0
    term = (1 << bits) // q
    q2 = q * q
    k = 0
    while term:
        total += term // (2 * k + 1) if k % 2 == 0 else -(term // (2 * k + 1))
        term //= q2
        k += 1
    return total


@lru_cache(maxsize=64)
def _pi_fixed(bits: int) -> int:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239), with guard bits
    g = bits + 16
    return (16 * _atan_inv_fixed(5, g) - 4 * _atan_inv_fixed(239, g)) >> 16


def _sincos_fixed_at(x: Fraction, bits: int) -> tuple[int, int]:
    """(sin x, cos x) scaled by 2**bits.

    x is reduced by the nearest multiple of pi/2 (pi carried with enough
    extra bits to cover the multiple), then a Taylor series is summed.
    """
    k = round(float(x) / (math.pi / 2))
    extra = max(k, 1).bit_length() + 8
    wb = bits + extra
    xf = (x.numerator << wb) // x.denominator
    r = xf - k * (_pi_fixed(wb) >> 1)  # |r| <~ pi/4 at precision wb
    one = 1 << wb
    term = one
    s = 0
    c = one
    j = 0
    while True:
        j += 1
        term = (term * r >> wb) // j
        if j % 4 == 1:
            s += term
        elif j % 4 == 2:
            c -= term
        elif j % 4 == 3:
            s -= term
        else:
            c += term
        if -2 <= term <= 2:
            break
    q = k % 4
    if q == 1:
        s, c = c, -s
    elif q == 2:
        s, c = -s, -c
    elif q == 3:
        s, c = -c, s
    return s >> extra, c >> extra


def trig_combination(f: Fraction, g: Fraction, x: Fraction) -> float:
    """f*sin(x) + g*cos(x) for exact f, g, x, correctly cancelled.

    The working precision grows until two runs agree, so the result is
    accurate to ~2**-62 relative even when |f|, |g| are vastly larger
    than the combination.
    """
    scale = max(abs(f), abs(g), Fraction(1))
    bits = 96 + _log2_ceil(scale)
    for _ in range(12):
        lo = _trig_comb_at(f, g, x, bits)
        hi = _trig_comb_at(f, g, x, bits + _EXTRA_BITS)
        if _agree((lo, 0), (hi, 0), _EXTRA_BITS):
            return _fix_to_float(hi, bits + _EXTRA_BITS)
        bits *= 2
    raise EvaluationError("trigonometric combination did not stabilise")


def _log2_ceil(q: Fraction) -> int:
    return max(0, q.numerator.bit_length() - q.denominator.bit_length() + 1)


def exp_combination(sm: tuple[Fraction, Fraction], sp: tuple[Fraction, Fraction],
                    lam: Fraction) -> complex:
    """e^{-i lam} sm + e^{i lam} sp for exact Gaussian rationals sm, sp."""
    mr, mi = sm
    pr, pi = sp
    re = trig_combination(mi - pi, mr + pr, lam)
    im = trig_combination(pr - mr, mi + pi, lam)
    return complex(re, im)


def _trig_comb_at(f: Fraction, g: Fraction, x: Fraction, bits: int) -> int:
    s, c = _sincos_fixed_at(x, bits)
    num = f.numerator * g.denominator * s + g.numerator * f.denominator * c
    return num // (f.denominator * g.denominator)
