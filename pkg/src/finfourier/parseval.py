"""Fourier coefficients on [-1, 1] of Jacobi polynomials and of their
weighted versions Q_m = (1-x)^a (1+x)^b P_m^{(a,b)}, Parseval sums and the
W-function identity they imply.

Coefficients use the orthonormal system e^{pi i j x}/sqrt(2):
a_j(f) = (1/sqrt 2) int_{-1}^{1} f(x) e^{-pi i j x} dx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numerics import shifted_factorial as poch
from .polyfamilies import FamilySpec, as_fraction
from .specialfns import HypergeometricSpec, kummer_1f1, terminating_pfq
from .transforms import MethodId, hat, jacobi_hat_zero, weighted_jacobi_hat

SQRT2 = math.sqrt(2.0)


def _log_beta_mass(m: int, a: float, b: float) -> float:
    """log(2^{m+a+b+1} B(m+a+1, m+b+1))."""
    return ((m + a + b + 1) * math.log(2) + math.lgamma(m + a + 1) + math.lgamma(m + b + 1)
            - math.lgamma(2 * m + a + b + 2))


def jacobi_norm(n: int, alpha, beta) -> float:
    """h_n = int (1-x)^a (1+x)^b P_n^{(a,b)}(x)^2 dx.

    The Gamma ratio is split into B(a+1, b+1) times an exact rational
    Pochhammer product, so large n does not overflow.
    """
    spec = FamilySpec.jacobi(n, alpha, beta)
    a, b = spec.alpha, spec.beta
    fa, fb = float(a), float(b)
    log_mass = ((fa + fb + 1) * math.log(2) + math.lgamma(fa + 1) + math.lgamma(fb + 1)
                - math.lgamma(fa + fb + 2))
    if n == 0:
        return math.exp(log_mass)
    ratio = Fraction(poch(a + 1, n) * poch(b + 1, n)) / (
        (2 * n + a + b + 1) * math.factorial(n) * poch(a + b + 2, n - 1))
    return math.exp(log_mass) * float(ratio)


def fourier_coeff_p(n: int, alpha, beta, j: int) -> complex:
    """a_j(P_n^{(a,b)}): the unweighted transform at lam = -pi j over sqrt 2."""
    j = int(j)
    if j == 0:
        return jacobi_hat_zero(n, alpha, beta).value / SQRT2
    spec = FamilySpec.jacobi(n, alpha, beta)
    return hat(spec, -math.pi * j, MethodId.J_3F1).value / SQRT2


def _f31(n: int, a: Fraction, b: Fraction, den: Fraction, arg: complex) -> complex:
    return terminating_pfq(HypergeometricSpec((n + a + b + 1, -n, 1), (den,), arg), n)


def fourier_coeff_p_display(n: int, alpha, beta, j: int) -> complex:
    """a_j(P_n) in the printed Parseval-section form
    (-1)^j/(2 pi i j n!) [(-1)^n (b+1)_n 3F1(..; b+1; 1/(2 pi i j))
    - (a+1)_n 3F1(..; a+1; -1/(2 pi i j))].

    Kept for comparison only: it equals :func:`fourier_coeff_p` / sqrt 2.
    """
    j = int(j)
    if j == 0:
        raise ValueError("the display is stated for j != 0")
    a, _ = as_fraction(alpha)
    b, _ = as_fraction(beta)
    t = 2j * math.pi * j
    bracket = ((-1) ** n * float(poch(b + 1, n)) * _f31(n, a, b, b + 1, 1 / t)
               - float(poch(a + 1, n)) * _f31(n, a, b, a + 1, -1 / t))
    return (-1) ** j / (t * math.factorial(n)) * bracket


def fourier_coeff_q(m: int, alpha, beta, j: int) -> complex:
    """a_j(Q_m) from the weighted transform at lam = -pi j."""
    return weighted_jacobi_hat(m, alpha, beta, -math.pi * int(j)) / SQRT2


def fourier_coeff_q_kummer(m: int, alpha, beta, j: int) -> complex:
    """a_j(Q_m) through Kummer's transformation:
    conj(a_j(Q_m)) = (i pi j)^m (-1)^j / m! 2^{m+a+b+1/2} B(m+a+1, m+b+1)
                     1F1(m+b+1; 2m+a+b+2; 2 pi i j).
    """
    j = int(j)
    spec = FamilySpec.jacobi(m, alpha, beta)
    a, b = spec.alpha, spec.beta
    fa, fb = float(a), float(b)
    if j == 0:
        return complex(math.exp(_log_beta_mass(0, fa, fb)) / SQRT2, 0.0) if m == 0 else 0j
    log_pre = _log_beta_mass(m, fa, fb) - 0.5 * math.log(2) + m * math.log(math.pi * abs(j)) \
        - math.lgamma(m + 1)
    phase = (1j * (1 if j > 0 else -1)) ** m * (-1) ** (j % 2)
    f = kummer_1f1(m + b + 1, 2 * m + a + b + 2, complex(0.0, 2 * math.pi * j))
    return (math.exp(log_pre) * phase * f).conjugate()


def fourier_coeff_q_printed(m: int, alpha, beta, j: int) -> complex:
    """The printed Kummer-rewritten display, which carries j^m where
    (i pi j)^m belongs; agrees with :func:`fourier_coeff_q` only for m = 0."""
    j = int(j)
    if j == 0:
        raise ValueError("the display is stated for j != 0")
    k = fourier_coeff_q_kummer(m, alpha, beta, j)
    return k / ((-1j * math.pi) ** m) if m else k


@dataclass(frozen=True)
class ParsevalReport:
    n: int
    m: int
    alpha: float
    beta: float
    J: int
    partial_sum: complex
    target: float
    residual: float
    tail_est: float
    octaves: tuple = ()  # (J', S_J') at J' = 1, 2, 4, ..., J


def parseval_partial_sum(n: int, m: int, alpha, beta, J: int) -> ParsevalReport:
    """S_J = sum_{|j| <= J} a_j(P_n) conj(a_j(Q_m)) against h_n delta_{nm}.

    The j and -j terms are conjugate to each other (both functions are real),
    so each pair contributes 2 Re(a_j(P) conj(a_j(Q))).  The tail estimate
    is |S_J - S_{J/2}|, the size of the last octave.
    """
    J = int(J)
    if J < 1:
        raise ValueError("J must be >= 1")
    spec = FamilySpec.jacobi(n, alpha, beta)
    FamilySpec.jacobi(m, alpha, beta)
    re_terms = [(fourier_coeff_p(n, alpha, beta, 0)
                 * fourier_coeff_q(m, alpha, beta, 0).conjugate()).real]
    octaves = []
    next_mark = 1
    for j in range(1, J + 1):
        p = fourier_coeff_p(n, alpha, beta, j)
        q = fourier_coeff_q(m, alpha, beta, j)
        re_terms.append(2 * (p * q.conjugate()).real)
        if j == next_mark:
            octaves.append((j, math.fsum(re_terms)))
            next_mark *= 2
    total = math.fsum(re_terms)
    if octaves[-1][0] != J:
        octaves.append((J, total))
    half = [s for jj, s in octaves if jj <= J // 2]
    tail = abs(total - half[-1]) if half else abs(total)
    target = jacobi_norm(n, spec.alpha, spec.beta) if n == m else 0.0
    return ParsevalReport(n, m, float(spec.alpha), float(spec.beta), J, complex(total, 0.0),
                          target, abs(total - target), tail, tuple(octaves))


def w_function(n: int, m: int, alpha, beta, j: int, swapped: bool = False) -> complex:
    """W_{n,m}^{(a,b)}(2 pi i j; j) = (a+1)_n j^{m-1} 3F1(n+a+b+1, -n, 1; a+1; 1/t)
    1F1(m+a+1; 2m+a+b+2; t) at t = 2 pi i j; ``swapped`` exchanges a and b."""
    j = int(j)
    if j == 0:
        raise ValueError("W is defined for j != 0")
    a, _ = as_fraction(alpha)
    b, _ = as_fraction(beta)
    if swapped:
        a, b = b, a
    t = complex(0.0, 2 * math.pi * j)
    f31 = _f31(n, a, b, a + 1, 1 / t)
    f11 = kummer_1f1(m + a + 1, 2 * m + a + b + 2, t)
    return float(poch(a + 1, n)) * float(j) ** (m - 1) * f31 * f11


def w_sums(n: int, m: int, alpha, beta, J: int) -> tuple[complex, complex]:
    """(S_J(swapped), S_J(plain)) over 0 < |j| <= J, summed in order of |j|."""
    sw, pl = [], []
    for j in range(1, int(J) + 1):
        for s in (j, -j):
            sw.append(w_function(n, m, alpha, beta, s, True))
            pl.append(w_function(n, m, alpha, beta, s, False))
    return _csum(sw), _csum(pl)


def _csum(terms) -> complex:
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def w_identity_residual(n: int, m: int, alpha, beta, J: int) -> float:
    """|(-1)^n S_J(swapped) - (-1)^{m-1} S_J(plain)|."""
    sw, pl = w_sums(n, m, alpha, beta, J)
    return abs((-1) ** n * sw - (-1) ** (m - 1) * pl)
