"""The five classical families on [-1, 1]: pointwise evaluation, exact
monomial coefficients, Jacobi endpoint values and reductions to Jacobi.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .numerics import check_degree, shifted_factorial

_MAX_EXACT_DENOMINATOR = 10**9


class Family(str, enum.Enum):
    LEGENDRE = "legendre"
    JACOBI = "jacobi"
    GEGENBAUER = "gegenbauer"
    CHEBYSHEV_T = "chebyshev-t"
    CHEBYSHEV_U = "chebyshev-u"


def as_fraction(x) -> tuple[Fraction, bool]:
    """Exact rational for a parameter and whether it is "exact".

    Ints and Fractions are exact.  A float is read through its shortest
    decimal repr, so ``-0.3`` becomes ``-3/10``; when that needs a huge
    denominator the float is taken at its binary value and flagged inexact.
    """
    if isinstance(x, Fraction):
        return x, True
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x), True
    xf = float(x)
    if not np.isfinite(xf):
        raise ParameterError(f"parameter must be finite, got {x!r}")
    dec = Fraction(repr(xf))
    if dec.denominator <= _MAX_EXACT_DENOMINATOR:
        return dec, True
    return Fraction(xf), False


@dataclass(frozen=True)
class FamilySpec:
    """A polynomial: family tag, degree and family parameters.

    Parameters are stored as exact Fractions (see :func:`as_fraction`).
    """

    family: Family
    n: int
    alpha: Fraction | None = None
    beta: Fraction | None = None
    nu: Fraction | None = None
    exact: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "n", check_degree(self.n, "n"))
        exact = True
        for name in ("alpha", "beta", "nu"):
            v = getattr(self, name)
            if v is not None:
                fv, ok = as_fraction(v)
                object.__setattr__(self, name, fv)
                exact = exact and ok
        object.__setattr__(self, "exact", exact)
        fam = self.family
        if fam is Family.JACOBI:
            if self.alpha is None or self.beta is None:
                raise ParameterError("Jacobi needs alpha and beta")
            if self.alpha <= -1 or self.beta <= -1:
                raise ParameterError("Jacobi needs alpha > -1 and beta > -1")
        elif fam is Family.GEGENBAUER:
            if self.nu is None:
                raise ParameterError("Gegenbauer needs nu")
            if self.nu <= Fraction(-1, 2) or self.nu == 0:
                raise ParameterError("Gegenbauer needs nu > -1/2 and nu != 0")

    @classmethod
    def legendre(cls, n):
        return cls(Family.LEGENDRE, n)

    @classmethod
    def jacobi(cls, n, alpha, beta):
        return cls(Family.JACOBI, n, alpha=alpha, beta=beta)

    @classmethod
    def gegenbauer(cls, n, nu):
        return cls(Family.GEGENBAUER, n, nu=nu)

    @classmethod
    def chebyshev_t(cls, n):
        return cls(Family.CHEBYSHEV_T, n)

    @classmethod
    def chebyshev_u(cls, n):
        return cls(Family.CHEBYSHEV_U, n)

    def params(self) -> dict:
        out = {}
        for name in ("alpha", "beta", "nu"):
            v = getattr(self, name)
            if v is not None:
                out[name] = float(v)
        return out

    def label(self) -> str:
        p = ",".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{self.family.value}(n={self.n}{',' + p if p else ''})"


@dataclass(frozen=True)
class RationalCoeffVector:
    """Monomial coefficients c_0..c_n (c_k multiplies x**k)."""

    coeffs: tuple[Fraction, ...]
    exact: bool = True

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def exact_value(self, x) -> Fraction:
        """Horner evaluation in exact rational arithmetic."""
        xf = x if isinstance(x, Fraction) else Fraction(float(x))
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * xf + c
        return acc

    def __call__(self, x):
        """Value at x, rounded once from the exact rational result.

        Floating-point Horner is avoided on purpose: the coefficients of
        degree-40 Legendre polynomials already alternate at the 1e11 level.
        """
        if np.isscalar(x):
            return float(self.exact_value(x))
        xa = np.asarray(x, dtype=float)
        return np.array([float(self.exact_value(v)) for v in xa.ravel()]).reshape(xa.shape)

    def scaled(self, s: Fraction) -> "RationalCoeffVector":
        return RationalCoeffVector(tuple(c * s for c in self.coeffs), self.exact)


# -- pointwise evaluation ---------------------------------------------------


def _jacobi_rec(n, a, b, x):
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    p1 = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c3 = 2 * (k + a - 1) * (k + b - 1) * s
        p0, p1 = p1, (c2 * p1 - c3 * p0) / c1
    return p1


def _gegenbauer_rec(n, nu, x):
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    p1 = 2 * nu * x
    for k in range(2, n + 1):
        p0, p1 = p1, (2 * x * (k + nu - 1) * p1 - (k + 2 * nu - 2) * p0) / k
    return p1


def _cheb_rec(n, x, first):
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    p1 = x if first else 2 * x
    for _ in range(2, n + 1):
        p0, p1 = p1, 2 * x * p1 - p0
    return p1


def eval(spec: FamilySpec, x):
    """P(x) by the family's three-term recurrence.

    Accepts a scalar or an array; returns the same shape.
    """
    scalar = np.isscalar(x)
    xa = np.asarray(x, dtype=float)
    n = spec.n
    fam = spec.family
    if fam is Family.LEGENDRE:
        out = _jacobi_rec(n, 0.0, 0.0, xa)
    elif fam is Family.JACOBI:
        out = _jacobi_rec(n, float(spec.alpha), float(spec.beta), xa)
    elif fam is Family.GEGENBAUER:
        out = _gegenbauer_rec(n, float(spec.nu), xa)
    elif fam is Family.CHEBYSHEV_T:
        out = _cheb_rec(n, xa, True)
    else:
        out = _cheb_rec(n, xa, False)
    return float(out) if scalar else out


# -- exact coefficients -------------------------------------------------------


def gbinom(a, k: int):
    """Generalized binomial C(a, k) for integer k (0 when k < 0)."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out = out * (a - i) / (i + 1)
    return out


@lru_cache(maxsize=512)
def _legendre_coeffs(n: int) -> tuple[Fraction, ...]:
    # P_n(x) = 2^n sum_k C(n,k) C((n+k-1)/2, n) x^k
    from math import comb

    return tuple(
        2**n * comb(n, k) * gbinom(Fraction(n + k - 1, 2), n) for k in range(n + 1)
    )


def _poly_mul_linear(p: list[int], c0: int, c1: int) -> list[int]:
    """p(x) * (c0 + c1 x) for integer coefficient lists."""
    out = [0] * (len(p) + 1)
    for i, v in enumerate(p):
        out[i] += c0 * v
        out[i + 1] += c1 * v
    return out


def _poly_div_xm1(p: list[int]) -> list[int]:
    """Exact division of p(x) by (x - 1) via synthetic division."""
    deg = len(p) - 1
    q = [0] * deg
    carry = 0
    for i in range(deg, 0, -1):
        carry = p[i] + carry
        q[i - 1] = carry
    if p[0] + carry != 0:
        raise ArithmeticError("polynomial not divisible by x - 1")
    return q


@lru_cache(maxsize=512)
def _jacobi_coeffs(n: int, a: Fraction, b: Fraction) -> tuple[Fraction, ...]:
    # P_n^{(a,b)}(x) = 2^{-n} sum_k C(a+n,k) C(b+n,n-k) (x-1)^{n-k} (x+1)^k
    # (x-1)^{n-k}(x+1)^k is updated from k to k+1 by *(x+1)/(x-1).
    q = [1]
    for _ in range(n):
        q = _poly_mul_linear(q, -1, 1)
    acc = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        w = gbinom(a + n, k) * gbinom(b + n, n - k)
        if w:
            for i, v in enumerate(q):
                if v:
                    acc[i] += w * v
        if k < n:
            q = _poly_div_xm1(_poly_mul_linear(q, 1, 1))
    scale = Fraction(1, 2**n)
    return tuple(c * scale for c in acc)


def monomial_coefficients(spec: FamilySpec) -> RationalCoeffVector:
    """Exact rational monomial coefficients.

    Legendre uses its explicit binomial representation; Jacobi expands the
    binomial-product definition; Gegenbauer and Chebyshev go through their
    Jacobi reductions.
    """
    fam = spec.family
    if fam is Family.LEGENDRE:
        return RationalCoeffVector(_legendre_coeffs(spec.n), True)
    if fam is Family.JACOBI:
        return RationalCoeffVector(_jacobi_coeffs(spec.n, spec.alpha, spec.beta), spec.exact)
    jspec, scale = reduce_to_jacobi(spec)
    base = RationalCoeffVector(_jacobi_coeffs(jspec.n, jspec.alpha, jspec.beta), spec.exact)
    return base.scaled(scale)


def jacobi_endpoints(n: int, alpha, beta) -> tuple[Fraction, Fraction]:
    """(P_n^{(a,b)}(1), P_n^{(a,b)}(-1)) = (C(a+n, n), (-1)^n C(b+n, n))."""
    n = check_degree(n, "n")
    a, _ = as_fraction(alpha)
    b, _ = as_fraction(beta)
    return gbinom(a + n, n), (-1) ** n * gbinom(b + n, n)


def reduce_to_jacobi(spec: FamilySpec) -> tuple[FamilySpec, Fraction]:
    """Jacobi spec and exact scale with original = scale * Jacobi polynomial."""
    n = spec.n
    fam = spec.family
    if fam is Family.LEGENDRE:
        return FamilySpec.jacobi(n, 0, 0), Fraction(1)
    if fam is Family.JACOBI:
        return spec, Fraction(1)
    if fam is Family.GEGENBAUER:
        nu = spec.nu
        half = nu - Fraction(1, 2)
        scale = shifted_factorial(2 * nu, n) / shifted_factorial(nu + Fraction(1, 2), n)
        return FamilySpec.jacobi(n, half, half), Fraction(scale)
    if fam is Family.CHEBYSHEV_U:
        return reduce_to_jacobi(FamilySpec.gegenbauer(n, 1))
    # T_n = P_n^{(-1/2,-1/2)} / P_n^{(-1/2,-1/2)}(1); T_0 is the constant 1
    h = Fraction(-1, 2)
    top, _ = jacobi_endpoints(n, h, h)
    return FamilySpec.jacobi(n, h, h), 1 / top
