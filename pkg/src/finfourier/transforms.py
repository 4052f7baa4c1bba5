"""Closed-form finite Fourier transforms int_{-1}^{1} P(x) e^{i lam x} dx.

Each family has several equivalent closed forms, selected by
:class:`MethodId`.  All of them have the shape
e^{-i lam} S_-(1/lam) + e^{i lam} S_+(1/lam) with rational S_-, S_+; the
sums are accumulated exactly and rounded once.  For |lam| below
:func:`hat_threshold` requests are answered by the Taylor series in lam
instead (flag ``small-lambda-branch``).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _extended, oracle
from .errors import EvaluationError, ParameterError
from .numerics import EPS, shifted_factorial as poch, switch_threshold
from .polyfamilies import (
    Family,
    FamilySpec,
    as_fraction,
    eval as poly_eval,
    gbinom,
    jacobi_endpoints,
    monomial_coefficients,
    reduce_to_jacobi,
)
from .specialfns import kummer_1f1, spherical_bessel_j

CANCELLATION_WARNING = 1e-8
ORACLE_TOL = 1e-11

SMALL_LAMBDA = "small-lambda-branch"
CANCELLATION = "cancellation-warning"
INEXACT = "inexact-parameters"
DISCREPANCY = "paper-formula-discrepancy"


class MethodId(str, enum.Enum):
    L_COEFF = "L-coeff"
    L_BESSEL = "L-bessel"
    L_HYP = "L-hyp"
    L_CLOSED = "L-closed"
    J_EK = "J-Ek"
    J_BOUNDARY = "J-boundary"
    J_3F1 = "J-3F1"
    J_LAMBDA0 = "J-lambda0"
    G_EK = "G-Ek"
    G_CLOSED = "G-closed"
    G_3F1 = "G-3F1"
    U_EK = "U-Ek"
    U_CLOSED = "U-closed"
    T_CLOSED = "T-closed"
    SMALL_LAMBDA_SERIES = "small-lambda-series"
    VIA_JACOBI = "via-jacobi-reduction"
    ORACLE = "oracle"
    OPERATOR = "operator"

    @classmethod
    def parse(cls, text: str) -> "MethodId":
        t = text.strip().replace("λ", "lambda")
        for m in cls:
            if m.value.lower() == t.lower():
                return m
        raise ParameterError(f"unknown method {text!r}")


FAMILY_METHODS = {
    Family.LEGENDRE: (MethodId.L_COEFF, MethodId.L_BESSEL, MethodId.L_HYP, MethodId.L_CLOSED),
    Family.JACOBI: (MethodId.J_EK, MethodId.J_BOUNDARY, MethodId.J_3F1),
    Family.GEGENBAUER: (MethodId.G_EK, MethodId.G_CLOSED, MethodId.G_3F1),
    Family.CHEBYSHEV_U: (MethodId.U_EK, MethodId.U_CLOSED),
    Family.CHEBYSHEV_T: (MethodId.T_CLOSED,),
}
SHARED_METHODS = (MethodId.SMALL_LAMBDA_SERIES, MethodId.VIA_JACOBI, MethodId.ORACLE,
                  MethodId.OPERATOR)

# default closed form and the cheap second method used to estimate its error
_AUTO = {
    Family.LEGENDRE: (MethodId.L_CLOSED, MethodId.L_BESSEL),
    Family.JACOBI: (MethodId.J_BOUNDARY, MethodId.J_3F1),
    Family.GEGENBAUER: (MethodId.G_CLOSED, MethodId.VIA_JACOBI),
    Family.CHEBYSHEV_U: (MethodId.U_CLOSED, MethodId.U_EK),
    Family.CHEBYSHEV_T: (MethodId.T_CLOSED, MethodId.VIA_JACOBI),
}


@dataclass(frozen=True)
class TransformResult:
    value: complex
    method: MethodId
    est_rel_err: float
    flags: frozenset = field(default_factory=frozenset)


def hat_threshold(n: int) -> float:
    """|lam| below which transforms of degree n use the Taylor series."""
    return switch_threshold(n)


# -- exact accumulation ----------------------------------------------------------
#
# Every sum-type form is e^{-i lam} S_minus + e^{i lam} S_plus where S_minus,
# S_plus are Gaussian rationals once lam is read as the exact binary
# Fraction it is.  They are accumulated exactly and only the final
# combination is rounded (in extended precision if it cancels).


class _Gauss:
    """Exact Gaussian rational re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re=Fraction(0), im=Fraction(0)):
        self.re = re
        self.im = im

    def add(self, r: Fraction, ipow: int) -> None:
        # self += r * i**ipow
        q = ipow % 4
        if q == 0:
            self.re += r
        elif q == 1:
            self.im += r
        elif q == 2:
            self.re -= r
        else:
            self.im -= r

    def add_scaled(self, other: "_Gauss", r: Fraction, ipow: int) -> None:
        # self += other * r * i**ipow
        self.add(other.re * r, ipow)
        self.add(other.im * r, ipow + 1)

    def pair(self) -> tuple[Fraction, Fraction]:
        return self.re, self.im


def _to_complex(g: _Gauss) -> complex:
    return complex(float(g.re), float(g.im))


def _combine(sm: _Gauss, sp: _Gauss, lam: float) -> tuple[complex, float]:
    """e^{-i lam} sm + e^{i lam} sp and its relative error estimate."""
    try:
        m = _to_complex(sm)
        p = _to_complex(sp)
    except OverflowError:
        m = p = None
    if m is not None:
        ep = complex(math.cos(lam), math.sin(lam))
        v = ep.conjugate() * m + ep * p
        est = 4 * EPS * (abs(m) + abs(p)) / max(abs(v), 1e-300)
        if est <= 1e-14:
            return v, max(est, EPS)
    v = _extended.exp_combination(sm.pair(), sp.pair(), Fraction(lam))
    return v, EPS


def _boundary_terms(a_coeffs, b_coeffs, lam: float, c: int) -> tuple[_Gauss, _Gauss]:
    """S_minus = sum a_k/(c i lam)^{k+1}, S_plus = sum b_k/(c i lam)^{k+1}."""
    base = c * Fraction(lam)
    sm, sp = _Gauss(), _Gauss()
    inv = Fraction(1)
    for k, (a, b) in enumerate(zip(a_coeffs, b_coeffs)):
        inv /= base
        ipow = -(k + 1)
        sm.add(a * inv, ipow)
        sp.add(b * inv, ipow)
    return sm, sp


def _ek_terms(d_coeffs, lam: float) -> tuple[_Gauss, _Gauss]:
    """sum d_k [e^{-i lam} E_k(2 i lam) - e^{i lam}] / (-2 i lam)^{k+1}."""
    L = Fraction(lam)
    base = -2 * L
    sm, sp = _Gauss(), _Gauss()
    ek = _Gauss(Fraction(1))
    z_pow = Fraction(1)  # (2 lam)^k / k!
    inv = Fraction(1)
    for k, d in enumerate(d_coeffs):
        if k:
            z_pow = z_pow * 2 * L / k
            ek.add(z_pow, k)
        inv /= base
        w = d * inv
        ipow = -(k + 1)
        sm.add_scaled(ek, w, ipow)
        sp.add(-w, ipow)
    return sm, sp


def _bracket_terms(coeffs, lam: float) -> tuple[_Gauss, _Gauss]:
    """sum_k c_k (-1)^k k!/(i lam)^{k+1} [e^{i lam} E_k(-i lam) - e^{-i lam} E_k(i lam)]."""
    L = Fraction(lam)
    sm, sp = _Gauss(), _Gauss()
    e_plus = _Gauss(Fraction(1))   # E_k(i lam)
    e_minus = _Gauss(Fraction(1))  # E_k(-i lam)
    z_pow = Fraction(1)  # lam^k / k!
    inv = Fraction(1)
    fact = 1
    for k, c in enumerate(coeffs):
        if k:
            z_pow = z_pow * L / k
            fact *= k
            e_plus.add(z_pow, k)
            e_minus.add(z_pow if k % 2 == 0 else -z_pow, k)
        inv /= L
        if not c:
            continue
        w = c * (-1) ** k * fact * inv
        ipow = -(k + 1)
        sp.add_scaled(e_minus, w, ipow)
        sm.add_scaled(e_plus, -w, ipow)
    return sm, sp


def _three_f_one(top: Fraction, n: int, den: Fraction, pre: Fraction, t_sign: int,
                 lam: float) -> _Gauss:
    """pre * 3F1(top, -n, 1; den; 1/t) / (i lam) with t = t_sign * 2 i lam."""
    L = Fraction(lam)
    out = _Gauss()
    term = pre / L  # k = 0 term, carrying the 1/lam
    out.add(term, -1)
    for k in range(n):
        # ratio (top+k)(-n+k)/(den+k) * 1/t ; 1/t = (t_sign * 2 lam)^{-1} i^{-1}
        term = term * (top + k) * (k - n) / ((den + k) * t_sign * 2 * L)
        out.add(term, -1 - (k + 1))
    return out


# -- exact coefficient tables (cached per parameter set) ----------------------


@lru_cache(maxsize=1024)
def _legendre_tables(n: int):
    f = math.factorial
    kk = tuple(Fraction(2 * f(n + k), f(n - k) * f(k)) for k in range(n + 1))
    return kk, tuple((-1) ** (n + k) * c for k, c in enumerate(kk)), tuple(-c for c in kk)


@lru_cache(maxsize=1024)
def _jacobi_tables(n: int, a: Fraction, b: Fraction):
    N = n + a + b + 1
    f = math.factorial
    bound_a, bound_b, ek = [], [], []
    apn = poch(a + 1, n)
    nk = Fraction(1)
    for k in range(n + 1):
        if k:
            nk *= N + k - 1
        bound_a.append(Fraction(2 * (-1) ** (n - k) * nk * poch(b + k + 1, n - k), f(n - k)))
        bound_b.append(Fraction(-2 * nk * poch(a + k + 1, n - k), f(n - k)))
        ek.append(Fraction(2 * apn * nk, f(n - k) * poch(a + 1, k)))
    return tuple(bound_a), tuple(bound_b), tuple(ek)


@lru_cache(maxsize=1024)
def _gegenbauer_tables(n: int, nu: Fraction):
    f = math.factorial
    pre = Fraction(2) * poch(2 * nu, n) * poch(nu, n) / poch(2 * nu, 2 * n)
    closed_a, closed_b, ek = [], [], []
    for k in range(n + 1):
        kk = Fraction(pre * 4**k * poch(n + 2 * nu, k) * poch(2 * nu + 2 * k, 2 * n - 2 * k)) / (
            f(n - k) * poch(nu + k, n - k))
        closed_a.append((-1) ** (n - k) * kk)
        closed_b.append(-kk)
        ek.append(Fraction(2 * poch(2 * nu, n) * 4**k * poch(n + 2 * nu, k) * poch(nu, k))
                  / (f(n - k) * poch(2 * nu, 2 * k)))
    return tuple(closed_a), tuple(closed_b), tuple(ek)


@lru_cache(maxsize=1024)
def _cheb_u_tables(n: int):
    f = math.factorial
    closed = [Fraction(2 ** (2 * k + 1) * f(n + k + 1) * f(k), f(2 * k + 1) * f(n - k))
              for k in range(n + 1)]
    ek = tuple(Fraction(2 ** (2 * k + 1) * f(k) * math.comb(n + k + 1, n - k))
               for k in range(n + 1))
    return (tuple((-1) ** (n - k) * c for k, c in enumerate(closed)),
            tuple(-c for c in closed), ek)


@lru_cache(maxsize=1024)
def _cheb_t_tables(n: int):
    f = math.factorial
    kk = [Fraction((-1) ** (k + 1) * n * 2**k * f(n + k) * f(k), f(n - k) * f(2 * k) * (n + k))
          for k in range(n + 1)]
    return tuple((-1) ** (n - k) * c for k, c in enumerate(kk)), tuple(-c for c in kk)


# -- raw closed forms (no routing) ---------------------------------------------


def _jacobi_3f1(n: int, a: Fraction, b: Fraction, lam: float) -> tuple[_Gauss, _Gauss]:
    f = math.factorial(n)
    N = n + a + b + 1
    sp = _three_f_one(N, n, a + 1, Fraction(poch(a + 1, n), f), 1, lam)
    sm = _three_f_one(N, n, b + 1, (-1) ** (n + 1) * Fraction(poch(b + 1, n), f), -1, lam)
    return sm, sp


def _sums(spec: FamilySpec, lam: float, method: MethodId) -> tuple[_Gauss, _Gauss]:
    fam, n = spec.family, spec.n
    if method is MethodId.L_COEFF and fam is Family.LEGENDRE:
        return _bracket_terms(monomial_coefficients(spec).coeffs, lam)
    if fam is Family.LEGENDRE:
        kk, ca, cb = _legendre_tables(n)
        if method is MethodId.L_CLOSED:
            return _boundary_terms(ca, cb, lam, -2)
        if method is MethodId.L_HYP:
            return _ek_terms(kk, lam)
    elif fam is Family.JACOBI:
        a, b = spec.alpha, spec.beta
        if method is MethodId.J_BOUNDARY:
            ba, bb, _ = _jacobi_tables(n, a, b)
            return _boundary_terms(ba, bb, lam, -2)
        if method is MethodId.J_EK:
            return _ek_terms(_jacobi_tables(n, a, b)[2], lam)
        if method is MethodId.J_3F1:
            return _jacobi_3f1(n, a, b, lam)
    elif fam is Family.GEGENBAUER:
        nu = spec.nu
        if method is MethodId.G_CLOSED:
            ca, cb, _ = _gegenbauer_tables(n, nu)
            return _boundary_terms(ca, cb, lam, -2)
        if method is MethodId.G_EK:
            return _ek_terms(_gegenbauer_tables(n, nu)[2], lam)
        if method is MethodId.G_3F1:
            pre = Fraction(poch(2 * nu, n), math.factorial(n))
            d = nu + Fraction(1, 2)
            sp = _three_f_one(n + 2 * nu, n, d, pre, 1, lam)
            sm = _three_f_one(n + 2 * nu, n, d, (-1) ** (n + 1) * pre, -1, lam)
            return sm, sp
    elif fam is Family.CHEBYSHEV_U:
        ca, cb, ek = _cheb_u_tables(n)
        if method is MethodId.U_CLOSED:
            return _boundary_terms(ca, cb, lam, -2)
        if method is MethodId.U_EK:
            return _ek_terms(ek, lam)
    elif method is MethodId.T_CLOSED:
        if n == 0:
            raise ParameterError("T-closed needs n >= 1")
        ca, cb = _cheb_t_tables(n)
        return _boundary_terms(ca, cb, lam, 1)
    raise ParameterError(f"method {method.value} does not apply to {fam.value}")


def _bessel_form(n: int, lam: float) -> tuple[complex, float]:
    j = spherical_bessel_j(n, lam)
    v = 2 * (1j**n) * j
    # absolute error of the recurrences is ~ (n+2) eps |h_n(lam)|, |h_n| ~ 1/|lam| here
    est = 4 * EPS * (n + 2) / max(abs(lam) * abs(j), 1e-300)
    return v, max(est, EPS)


def _raw(spec: FamilySpec, lam: float, method: MethodId) -> tuple[complex, float]:
    if method is MethodId.L_BESSEL:
        if spec.family is not Family.LEGENDRE:
            raise ParameterError("L-bessel applies to Legendre only")
        return _bessel_form(spec.n, lam)
    sm, sp = _sums(spec, lam, method)
    return _combine(sm, sp, lam)


def raw_closed_form(spec: FamilySpec, lam: float, method: MethodId | str) -> complex:
    """One closed form evaluated as written, at any lam != 0 (no routing).

    The sums are accumulated exactly, so the result is the form's own value
    and not an artefact of cancellation; this is what the verdict table uses.
    """
    lam = float(lam)
    if lam == 0.0:
        raise ParameterError("closed forms need lambda != 0")
    method = MethodId.parse(method) if not isinstance(method, MethodId) else method
    return _raw(spec, lam, method)[0]


# -- small-lambda Taylor series ------------------------------------------------


class _TaylorCoefficients:
    """t_m = mu_m / m! with mu_m = int_{-1}^{1} x^m P(x) dx, kept exact."""

    def __init__(self, spec: FamilySpec):
        self.c = monomial_coefficients(spec).coeffs
        self.bound = 2 * float(sum(abs(v) for v in self.c))
        self.exact: list[Fraction] = []
        self.values: list[float] = []

    def _moment(self, m: int) -> Fraction:
        s = Fraction(0)
        for k in range(m % 2, len(self.c), 2):
            s += 2 * self.c[k] / (m + k + 1)
        return s

    def get(self, m: int) -> float:
        while len(self.values) <= m:
            j = len(self.values)
            t = self._moment(j) / math.factorial(j)
            self.exact.append(t)
            self.values.append(float(t))
        return self.values[m]


@lru_cache(maxsize=512)
def _taylor(spec: FamilySpec) -> _TaylorCoefficients:
    return _TaylorCoefficients(spec)


def _log_tail(tc: _TaylorCoefficients, a: float, m: int) -> float:
    """log of a bound on |sum_{j >= m} t_j (i a)^j|, valid once m > a."""
    if tc.bound == 0.0:
        return -math.inf
    return (math.log(tc.bound) + m * math.log(a) - math.lgamma(m + 1)
            - math.log1p(-a / (m + 1)))


_LOG_STOP = math.log(EPS * 2.0**-4)


def _taylor_float(tc: _TaylorCoefficients, a: float) -> tuple[complex, float, int] | None:
    """Series at lam = a > 0: value, sum of |terms| and number of terms.

    None when a term overflows double precision.
    """
    re, im = [], []
    mag = 0.0
    log_a = math.log(a)
    m = 0
    while True:
        c = tc.get(m)
        if tc.exact[m]:
            if abs(c) < 1e-290 or math.log(abs(c)) + m * log_a > 700:
                return None
            t = c * a**m if m * log_a < 700 else c * a ** (m // 2) * a ** (m - m // 2)
            q = m % 4
            if q == 0:
                re.append(t)
            elif q == 1:
                im.append(t)
            elif q == 2:
                re.append(-t)
            else:
                im.append(-t)
            mag += abs(t)
        m += 1
        if m > a + 1:
            partial = math.hypot(math.fsum(re), math.fsum(im))
            lt = _log_tail(tc, a, m)
            if lt < -745 or (partial and lt < _LOG_STOP + math.log(partial)):
                break
        if m > 20000:
            raise ParameterError("small-lambda series failed to converge")
    return complex(math.fsum(re), math.fsum(im)), mag, m


def _taylor_exact(tc: _TaylorCoefficients, a: float) -> complex:
    """Truncated series summed in rational arithmetic."""
    L = Fraction(a)
    acc = _Gauss()
    power = Fraction(1)
    m = 0
    while True:
        tc.get(m)
        acc.add(tc.exact[m] * power, m)
        power *= L
        m += 1
        if m > a + 1 and m % 4 == 0:
            lt = _log_tail(tc, a, m)
            v = _to_complex(acc)
            if lt < -745 or (v and lt < _LOG_STOP + math.log(abs(v))):
                return v
        if m > 20000:
            raise ParameterError("small-lambda series failed to converge")


def hat_small_lambda(spec: FamilySpec, lam: float) -> TransformResult:
    """Transform by its Taylor series in lam, exact at lam = 0.

    The coefficients are the moments of P divided by m!, computed exactly
    from the rational monomial coefficients; this is the same series as
    summing c_k phi_k(lam) with every phi_k on its series branch, with the
    k-sum done first and exactly.  When the double-precision sum cancels,
    the truncated series is re-summed in rational arithmetic.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise ParameterError("lambda must be finite")
    if abs(lam) >= hat_threshold(spec.n):
        raise ParameterError(
            f"|lambda| = {abs(lam):g} is outside the series region (< {hat_threshold(spec.n):g})")
    tc = _taylor(spec)
    flags = {SMALL_LAMBDA}
    if not spec.exact:
        flags.add(INEXACT)
    if lam == 0.0:
        tc.get(0)
        return TransformResult(complex(float(tc.exact[0]), 0.0), MethodId.SMALL_LAMBDA_SERIES,
                               0.0 if spec.exact else EPS, frozenset(flags))
    a = abs(lam)
    first = _taylor_float(tc, a)
    err = math.inf
    if first is not None:
        v, mag, _ = first
        err = 4 * EPS * mag / max(abs(v), 1e-300)
    if err > 1e-14:
        v = _taylor_exact(tc, a)
        err = 2 * EPS
    if lam < 0:
        v = v.conjugate()
    if err > CANCELLATION_WARNING:
        flags.add(CANCELLATION)
    return TransformResult(v, MethodId.SMALL_LAMBDA_SERIES, min(err, 1.0), frozenset(flags))


# -- lambda = 0 for Jacobi -----------------------------------------------------


def jacobi_zero_printed(n: int, alpha, beta) -> Fraction:
    """The lam = 0 value exactly as printed alongside the Jacobi closed forms:
    (n+a+b+1)/2 [C(a+n, n-1) - (-1)^{n-1} C(b+n, n-1)].  Known to be wrong."""
    a, _ = as_fraction(alpha)
    b, _ = as_fraction(beta)
    return (n + a + b + 1) / 2 * (gbinom(a + n, n - 1) - (-1) ** (n - 1) * gbinom(b + n, n - 1))


def jacobi_zero_antiderivative(n: int, alpha, beta) -> Fraction | None:
    """2/(n+a+b) [C(a+n, n+1) - (-1)^{n+1} C(b+n, n+1)], from
    P_n^{(a,b)} = 2/(n+a+b) d/dx P_{n+1}^{(a-1,b-1)}.  None when n+a+b = 0."""
    a, _ = as_fraction(alpha)
    b, _ = as_fraction(beta)
    if n == 0:
        return Fraction(2)
    if n + a + b == 0:
        return None
    return 2 / (n + a + b) * (gbinom(a + n, n + 1) - (-1) ** (n + 1) * gbinom(b + n, n + 1))


def jacobi_zero_exact(n: int, alpha, beta) -> Fraction:
    """int_{-1}^{1} P_n^{(a,b)}(x) dx from the exact monomial coefficients."""
    c = monomial_coefficients(FamilySpec.jacobi(n, alpha, beta)).coeffs
    return sum((2 * c[k] / (k + 1) for k in range(0, len(c), 2)), Fraction(0))


def jacobi_hat_zero(n: int, alpha, beta) -> TransformResult:
    spec = FamilySpec.jacobi(n, alpha, beta)
    exact = jacobi_zero_exact(spec.n, spec.alpha, spec.beta)
    printed = jacobi_zero_printed(spec.n, spec.alpha, spec.beta)
    flags = set()
    if abs(printed - exact) > Fraction(1, 10**12) * max(1, abs(exact)):
        flags.add(DISCREPANCY)
    if not spec.exact:
        flags.add(INEXACT)
    return TransformResult(complex(float(exact), 0.0), MethodId.J_LAMBDA0,
                           0.0 if spec.exact else EPS, frozenset(flags))


# -- public per-family entry points ---------------------------------------------


def _finish(value: complex, err: float, method: MethodId, spec: FamilySpec) -> TransformResult:
    flags = set()
    if err > CANCELLATION_WARNING:
        flags.add(CANCELLATION)
    if not spec.exact:
        flags.add(INEXACT)
    return TransformResult(value, method, min(err, 1.0), frozenset(flags))


def hat(spec: FamilySpec, lam: float, method: MethodId | str | None = None,
        oracle_tol: float = ORACLE_TOL) -> TransformResult:
    """Transform of ``spec`` at ``lam`` with the requested method.

    ``None`` or ``"auto"`` delegates to :func:`hat_auto`.  Small |lam| is
    routed to the series regardless of the requested closed form.
    ``oracle_tol`` is the quadrature tolerance for ``MethodId.ORACLE``.
    """
    if method is None or (isinstance(method, str) and method.lower() == "auto"):
        return hat_auto(spec, lam)
    method = MethodId.parse(method) if not isinstance(method, MethodId) else method
    lam = float(lam)
    if not math.isfinite(lam):
        raise ParameterError("lambda must be finite")
    fam = spec.family
    if method not in FAMILY_METHODS[fam] + SHARED_METHODS + (MethodId.J_LAMBDA0,):
        raise ParameterError(f"method {method.value} does not apply to {fam.value}")

    if method is MethodId.ORACLE:
        est = oracle.quad_hat(lambda x: poly_eval(spec, x), lam, oracle_tol)
        if not est.converged:
            raise EvaluationError("quadrature budget exhausted", partial=est.value,
                                  estimate=est.abs_err_est)
        rel = est.abs_err_est / max(abs(est.value), 1e-300)
        flags = {INEXACT} if not spec.exact else set()
        return TransformResult(est.value, MethodId.ORACLE, rel, frozenset(flags))

    if method is MethodId.J_LAMBDA0:
        if fam is not Family.JACOBI or lam != 0.0:
            raise ParameterError("J-lambda0 applies to Jacobi at lambda = 0 only")
        return jacobi_hat_zero(spec.n, spec.alpha, spec.beta)

    if lam == 0.0 and fam is Family.JACOBI and method is not MethodId.SMALL_LAMBDA_SERIES:
        res = jacobi_hat_zero(spec.n, spec.alpha, spec.beta)
        return TransformResult(res.value, res.method, res.est_rel_err,
                               res.flags | {SMALL_LAMBDA})

    if method is MethodId.SMALL_LAMBDA_SERIES or abs(lam) < hat_threshold(spec.n):
        return hat_small_lambda(spec, lam)

    if method is MethodId.OPERATOR:
        from .operator_method import operator_hat

        return operator_hat(spec, lam)

    if method is MethodId.VIA_JACOBI or (fam is Family.CHEBYSHEV_T and spec.n == 0):
        jspec, scale = reduce_to_jacobi(spec)
        res = hat(jspec, lam, MethodId.J_BOUNDARY)
        flags = set(res.flags)
        if not spec.exact:
            flags.add(INEXACT)
        return TransformResult(float(scale) * res.value, MethodId.VIA_JACOBI,
                               res.est_rel_err, frozenset(flags))

    value, err = _raw(spec, lam, method)
    return _finish(value, err, method, spec)


def legendre_hat(n: int, lam: float, method=MethodId.L_CLOSED) -> TransformResult:
    return hat(FamilySpec.legendre(n), lam, method)


def jacobi_hat(n: int, alpha, beta, lam: float, method=MethodId.J_BOUNDARY) -> TransformResult:
    """Transform of P_n^{(alpha,beta)} with no weight in the integrand."""
    return hat(FamilySpec.jacobi(n, alpha, beta), lam, method)


def gegenbauer_hat(n: int, nu, lam: float, method=MethodId.G_CLOSED) -> TransformResult:
    return hat(FamilySpec.gegenbauer(n, nu), lam, method)


def chebyshev_u_hat(n: int, lam: float, method=MethodId.U_CLOSED) -> TransformResult:
    return hat(FamilySpec.chebyshev_u(n), lam, method)


def chebyshev_t_hat(n: int, lam: float, method=MethodId.T_CLOSED) -> TransformResult:
    return hat(FamilySpec.chebyshev_t(n), lam, method)


def hat_auto(spec: FamilySpec, lam: float) -> TransformResult:
    """Series below :func:`hat_threshold`, else the family's boundary-type
    closed form, with its error estimate widened by a second method."""
    lam = float(lam)
    if abs(lam) < hat_threshold(spec.n):
        if lam == 0.0 and spec.family is Family.JACOBI:
            return hat(spec, 0.0, MethodId.J_LAMBDA0)
        return hat_small_lambda(spec, lam)
    if spec.family is Family.CHEBYSHEV_T and spec.n == 0:
        return hat(spec, lam, MethodId.VIA_JACOBI)
    first, second = _AUTO[spec.family]
    r1 = hat(spec, lam, first)
    r2 = hat(spec, lam, second)
    diff = abs(r1.value - r2.value) / max(abs(r1.value), 1e-300)
    err = max(r1.est_rel_err, diff)
    flags = set(r1.flags)
    if err > CANCELLATION_WARNING:
        flags.add(CANCELLATION)
    return TransformResult(r1.value, r1.method, min(err, 1.0), frozenset(flags))


# -- weighted Jacobi transform ---------------------------------------------------


def weighted_jacobi_hat(n: int, alpha, beta, lam: float) -> complex:
    """int_{-1}^{1} (1-x)^a (1+x)^b P_n^{(a,b)}(x) e^{i lam x} dx
    = X_n(lam) 1F1(n+a+1; 2n+a+b+2; -2 i lam),
    X_n = (i lam)^n e^{i lam} / n! 2^{n+a+b+1} B(n+a+1, n+b+1)."""
    spec = FamilySpec.jacobi(n, alpha, beta)
    n, a, b = spec.n, spec.alpha, spec.beta
    fa, fb = float(a), float(b)
    lam = float(lam)
    log_mass = ((n + fa + fb + 1) * math.log(2) + math.lgamma(n + fa + 1)
                + math.lgamma(n + fb + 1) - math.lgamma(2 * n + fa + fb + 2))
    if lam == 0.0:
        return complex(math.exp(log_mass), 0.0) if n == 0 else 0j
    log_x = log_mass + n * math.log(abs(lam)) - math.lgamma(n + 1)
    phase = (1j * (1 if lam > 0 else -1)) ** n * cmath.exp(1j * lam)
    f = kummer_1f1(n + a + 1, 2 * n + a + b + 2, complex(0.0, -2.0 * lam))
    return math.exp(log_x) * phase * f
