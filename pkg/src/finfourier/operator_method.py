"""Transforms as a differential operator applied to 2 sinc.

With D = d/dlam, the transform of P is P(-iD)(2 sinc lam), and
D^n sinc = A_n(lam) sin lam + B_n(lam) cos lam where A_n, B_n are
polynomials in 1/lam with integer coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from . import _extended
from .errors import DomainError
from .numerics import EPS, check_degree
from .polyfamilies import FamilySpec, monomial_coefficients

TAU_OP = 0.5


@dataclass(frozen=True)
class InverseLambdaPoly:
    """sum_p coeffs[p] * lam**(-p) over powers p >= 1."""

    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(p): Fraction(c) for p, c in self.coeffs.items() if c}
        if any(p < 1 for p in clean):
            raise ValueError("powers of 1/lambda must be >= 1")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __add__(self, other: "InverseLambdaPoly") -> "InverseLambdaPoly":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return InverseLambdaPoly(out)

    def __neg__(self) -> "InverseLambdaPoly":
        return self.scale(-1)

    def __sub__(self, other: "InverseLambdaPoly") -> "InverseLambdaPoly":
        return self + (-other)

    def scale(self, s) -> "InverseLambdaPoly":
        return InverseLambdaPoly({p: c * s for p, c in self.coeffs.items()})

    def derivative(self) -> "InverseLambdaPoly":
        # d/dlam c lam^-p = -p c lam^-(p+1)
        return InverseLambdaPoly({p + 1: -p * c for p, c in self.coeffs.items()})

    def exact_value(self, lam: Fraction) -> Fraction:
        return sum((c / lam**p for p, c in self.coeffs.items()), Fraction(0))

    def __call__(self, lam: float) -> float:
        lam = float(lam)
        return math.fsum(float(c) / lam**p for p, c in self.coeffs.items())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())


@dataclass(frozen=True)
class SincDerivativePair:
    """D^n sinc = a(lam) sin lam + b(lam) cos lam."""

    a: InverseLambdaPoly
    b: InverseLambdaPoly

    def __call__(self, lam: float) -> float:
        return _sin_cos_combination(self.a, self.b, float(lam))


def _sin_cos_combination(a: InverseLambdaPoly, b: InverseLambdaPoly, lam: float) -> float:
    """a(lam) sin lam + b(lam) cos lam, re-done in extended precision when it cancels."""
    if lam == 0.0:
        raise DomainError("lambda must be nonzero")
    fa, fb = a(lam), b(lam)
    s, c = math.sin(lam), math.cos(lam)
    v = fa * s + fb * c
    scale = sum(abs(float(q)) / abs(lam) ** p for q, p in
                [(q, p) for poly in (a, b) for p, q in poly.coeffs.items()])
    if math.isfinite(v) and 8 * EPS * max(scale, 1.0) <= 1e-14 * abs(v):
        return v
    L = Fraction(lam)
    return _extended.trig_combination(a.exact_value(L), b.exact_value(L), L)


@lru_cache(maxsize=None)
def ab_polynomials(n: int) -> SincDerivativePair:
    """(A_n, B_n) from A_{k+1} = A_k' - B_k, B_{k+1} = A_k + B_k'."""
    n = check_degree(n, "n")
    if n == 0:
        return SincDerivativePair(InverseLambdaPoly({1: Fraction(1)}), InverseLambdaPoly())
    prev = ab_polynomials(n - 1)
    return SincDerivativePair(prev.a.derivative() - prev.b, prev.a + prev.b.derivative())


@lru_cache(maxsize=None)
def explicit_pair(n: int) -> SincDerivativePair:
    """The Leibniz expansion sum_j n!/(n-j)! sin(lam + (n+j) pi/2) / lam^{j+1},
    with each sin(lam + m pi/2) rewritten as +-sin or +-cos."""
    n = check_degree(n, "n")
    a: dict[int, Fraction] = {}
    b: dict[int, Fraction] = {}
    for j in range(n + 1):
        w = Fraction(math.factorial(n), math.factorial(n - j))
        q = (n + j) % 4
        if q == 0:
            a[j + 1] = w
        elif q == 1:
            b[j + 1] = w
        elif q == 2:
            a[j + 1] = -w
        else:
            b[j + 1] = -w
    return SincDerivativePair(InverseLambdaPoly(a), InverseLambdaPoly(b))


def sinc_derivative(n: int, lam: float) -> float:
    """n-th derivative of sin(lam)/lam from the explicit Leibniz sum.

    Raises DomainError for |lam| < 0.5, where the sum is all cancellation
    and the small-lambda series should be used instead.
    """
    lam = float(lam)
    if not abs(lam) >= TAU_OP:
        raise DomainError(
            f"|lambda| = {abs(lam):g} < {TAU_OP}; use the small-lambda series path")
    return explicit_pair(n)(lam)


@lru_cache(maxsize=512)
def _operator_polys(spec: FamilySpec):
    c = monomial_coefficients(spec).coeffs
    zero = InverseLambdaPoly()
    re_a, re_b, im_a, im_b = zero, zero, zero, zero
    for k, ck in enumerate(c):
        if not ck:
            continue
        pair = ab_polynomials(k)
        # 2 c_k (-i)^k: real for even k, imaginary for odd k
        if k % 2 == 0:
            w = 2 * ck * (-1) ** (k // 2)
            re_a, re_b = re_a + pair.a.scale(w), re_b + pair.b.scale(w)
        else:
            w = -2 * ck * (-1) ** ((k - 1) // 2)
            im_a, im_b = im_a + pair.a.scale(w), im_b + pair.b.scale(w)
    return re_a, re_b, im_a, im_b


def operator_hat(spec: FamilySpec, lam: float):
    """Transform of ``spec`` as P(-iD)(2 sinc lam) for |lam| >= 0.5.

    The k-sum is carried out on the exact A_k, B_k coefficients first, so
    sin and cos are combined only once for the real and once for the
    imaginary part.
    """
    from .transforms import INEXACT, MethodId, TransformResult

    lam = float(lam)
    if not abs(lam) >= TAU_OP:
        raise DomainError(
            f"|lambda| = {abs(lam):g} < {TAU_OP}; use hat_small_lambda instead")
    re_a, re_b, im_a, im_b = _operator_polys(spec)
    value = complex(_sin_cos_combination(re_a, re_b, lam) if (re_a.coeffs or re_b.coeffs) else 0.0,
                    _sin_cos_combination(im_a, im_b, lam) if (im_a.coeffs or im_b.coeffs) else 0.0)
    flags = frozenset() if spec.exact else frozenset({INEXACT})
    return TransformResult(value, MethodId.OPERATOR, 2 * EPS, flags)
