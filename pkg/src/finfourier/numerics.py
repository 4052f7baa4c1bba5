"""Scalar building blocks: partial exponential sums, monomial kernels,
shifted factorials and compensated summation.

All functions are pure.  Complex values are plain Python ``complex``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import EvaluationError, ParameterError

EPS = 2.0 ** -53
DEFAULT_MAX_DEGREE = 200
SERIES_TERM_CAP = 300


def max_degree() -> int:
    """Degree cap, overridable through ``FINFOURIER_MAX_DEGREE``."""
    raw = os.environ.get("FINFOURIER_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        cap = int(raw)
    except ValueError:
        raise ParameterError(f"FINFOURIER_MAX_DEGREE must be an integer, got {raw!r}")
    if cap < 0:
        raise ParameterError("FINFOURIER_MAX_DEGREE must be nonnegative")
    return cap


def check_degree(k: int, name: str = "degree") -> int:
    if isinstance(k, bool) or int(k) != k:
        raise ParameterError(f"{name} must be an integer, got {k!r}")
    k = int(k)
    if k < 0:
        raise ParameterError(f"{name} must be nonnegative, got {k}")
    cap = max_degree()
    if k > cap:
        raise ParameterError(f"{name} {k} exceeds the degree cap {cap}")
    return k


def switch_threshold(k: int) -> float:
    """|lambda| below which the monomial kernel uses its series branch."""
    return max(1.0, k / 2.0)


def compensated_sum(terms) -> complex:
    """Sum complex (or real) terms with per-component error compensation.

    Each component is accumulated with ``math.fsum``, which returns the
    correctly rounded sum; the result does not depend on the input order.
    """
    re = []
    im = []
    for t in terms:
        t = complex(t)
        re.append(t.real)
        im.append(t.imag)
    return complex(math.fsum(re), math.fsum(im))


def exp_partial_sum(k: int, z: complex) -> complex:
    """E_k(z) = sum_{j=0}^{k} z**j / j!."""
    k = check_degree(k, "k")
    z = complex(z)
    term = 1.0 + 0j
    terms = [term]
    for j in range(k):
        term = term * z / (j + 1)
        terms.append(term)
    return compensated_sum(terms)


def shifted_factorial(a, n: int):
    """Pochhammer symbol (a)_n = a (a+1) ... (a+n-1), by direct product.

    Works for floats, ints and Fractions; the result has the type of ``a``
    arithmetic, so integer or rational input stays exact.
    """
    if int(n) != n or n < 0:
        raise ParameterError(f"n must be a nonnegative integer, got {n!r}")
    out = 1
    for i in range(int(n)):
        out = out * (a + i)
    return out


@dataclass(frozen=True)
class KernelValue:
    value: complex
    branch: str  # "closed-form" or "series"
    est_rel_err: float


def _half_kernel_series(k: int, lam: float) -> tuple[complex, float]:
    """(k+1) * int_0^1 x^k e^{i lam x} dx as e^{i lam} 1F1(1; k+2; -i lam).

    Returns the value and the sum of term magnitudes.  The ratio
    |lam| / (k+2+j) stays below 1/2 inside the series region, so the
    terms decrease geometrically and no cancellation occurs.
    """
    z = -1j * lam
    term = 1.0 + 0j
    re = [1.0]
    im = [0.0]
    mag = 1.0
    running = 1.0 + 0j
    for j in range(SERIES_TERM_CAP):
        term = term * z / (k + 2 + j)
        re.append(term.real)
        im.append(term.imag)
        a = abs(term)
        mag += a
        running += term
        if a < EPS * abs(running):
            break
    else:
        raise EvaluationError(
            f"kernel series for k={k}, lambda={lam} did not converge in "
            f"{SERIES_TERM_CAP} terms",
            partial=complex(math.fsum(re), math.fsum(im)),
        )
    s = complex(math.fsum(re), math.fsum(im))
    return complex(math.cos(lam), math.sin(lam)) * s, mag


def _kernel_prefactor(k: int, lam: float) -> float:
    # k! / lam^(k+1) as a running product, avoiding k! overflow
    p = 1.0 / lam
    for j in range(1, k + 1):
        p *= j / lam
    return p


def moment_kernel(k: int, lam: float) -> KernelValue:
    """phi_k(lam) = int_{-1}^{1} x^k e^{i lam x} dx.

    For |lam| >= max(1, k/2) the closed form
    ((-1)^k k!/(i lam)^{k+1}) [e^{i lam} E_k(-i lam) - e^{-i lam} E_k(i lam)]
    is used; below that, the split into two half-interval series
    (1/(k+1)) [(-1)^k e^{-i lam} 1F1(1;k+2;i lam) + e^{i lam} 1F1(1;k+2;-i lam)].
    Both branches return an exactly real (k even) or exactly imaginary
    (k odd) value, and phi_k(-lam) is the exact conjugate of phi_k(lam).
    """
    k = check_degree(k, "k")
    lam = float(lam)
    if not math.isfinite(lam):
        raise ParameterError("lambda must be finite")
    a = abs(lam)
    if a < switch_threshold(k):
        if a == 0.0:
            v = 2.0 / (k + 1) if k % 2 == 0 else 0.0
            return KernelValue(complex(v, 0.0), "series", 0.0)
        w, mag = _half_kernel_series(k, a)
        if k % 2 == 0:
            v = complex(2.0 * w.real / (k + 1), 0.0)
        else:
            v = complex(0.0, 2.0 * w.imag / (k + 1))
        err = 4 * EPS * mag * 2.0 / (k + 1) / max(abs(v), 1e-300)
        if lam < 0:
            v = v.conjugate()
        return KernelValue(v, "series", min(err, 1.0))

    # closed form; the bracket is w - conj(w) = 2i Im(w)
    e_pos = complex(math.cos(a), math.sin(a))
    ek = exp_partial_sum(k, -1j * a)
    w = e_pos * ek
    bracket = 2j * w.imag
    pref = _kernel_prefactor(k, a) * (-1) ** k
    v = pref * bracket / (1j ** (k + 1))
    if k % 2 == 0:
        v = complex(v.real, 0.0)
    else:
        v = complex(0.0, v.imag)
    # cancellation estimate: largest E_k term against the result
    big = max(abs(w), _max_exp_term(k, a))
    err = 4 * EPS * abs(pref) * 2 * big / max(abs(v), 1e-300)
    if lam < 0:
        v = v.conjugate()
    return KernelValue(v, "closed-form", min(err, 1.0))


def _max_exp_term(k: int, a: float) -> float:
    j = min(k, int(a))
    return math.exp(j * math.log(a) - math.lgamma(j + 1)) if a > 0 else 1.0


def moment_kernel_unit(k: int, lam: float) -> KernelValue:
    """int_0^1 x^k e^{i lam x} dx.

    Closed form ((-1)^k k!/(i lam)^{k+1}) [e^{i lam} E_k(-i lam) - 1] for
    |lam| >= max(1, k/2), otherwise e^{i lam} 1F1(1; k+2; -i lam)/(k+1).
    """
    k = check_degree(k, "k")
    lam = float(lam)
    if not math.isfinite(lam):
        raise ParameterError("lambda must be finite")
    if abs(lam) < switch_threshold(k):
        if lam == 0.0:
            return KernelValue(complex(1.0 / (k + 1), 0.0), "series", 0.0)
        w, mag = _half_kernel_series(k, lam)
        v = w / (k + 1)
        err = 4 * EPS * mag / (k + 1) / max(abs(v), 1e-300)
        return KernelValue(v, "series", min(err, 1.0))
    e_pos = complex(math.cos(lam), math.sin(lam))
    ek = exp_partial_sum(k, -1j * lam)
    bracket = e_pos * ek - 1.0
    # prefactor for possibly negative lambda: (-1)^k k! / (i lam)^{k+1}
    pref = _kernel_prefactor(k, abs(lam)) * (-1) ** k
    if lam < 0:
        pref *= (-1) ** (k + 1)
    v = pref * bracket / (1j ** (k + 1))
    big = max(1.0, _max_exp_term(k, abs(lam)))
    err = 4 * EPS * abs(pref) * big / max(abs(v), 1e-300)
    return KernelValue(v, "closed-form", min(err, 1.0))
