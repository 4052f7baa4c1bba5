"""Independent quadrature reference for the transforms.

Unweighted integrands are smooth, so composite Gauss-Legendre on
max(8, ceil(|lam|/pi)) panels is enough; the order is doubled until two
estimates agree.  Weighted integrands (1-x)^a (1+x)^b have algebraic
endpoint singularities, which tanh-sinh handles on the two end panels
(with the distance to the endpoint computed without cancellation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ParameterError
from .polyfamilies import FamilySpec, eval as poly_eval

EVALUATION_BUDGET = 2_000_000
_ORDERS = (16, 32, 64, 128, 256)
_FLOOR = 64 * 2.0**-53


@dataclass(frozen=True)
class QuadratureEstimate:
    value: complex
    abs_err_est: float
    evaluations: int
    converged: bool


def _panel_count(lam: float) -> int:
    return max(8, math.ceil(abs(lam) / math.pi))


@lru_cache(maxsize=None)
def _nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _gauss(g: Callable, a: float, b: float, panels: int, order: int) -> tuple[complex, float]:
    x, w = _nodes(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    vals = np.asarray(g(xs), dtype=complex) * ws
    return (complex(math.fsum(vals.real.tolist()), math.fsum(vals.imag.tolist())),
            float(np.abs(vals).sum()))


def _done(err: float, value: complex, mass: float, tol: float) -> bool:
    # relative target, or the rounding floor of the integrand's L1 mass
    return err <= max(tol * abs(value), _FLOOR * mass) or err < 1e-300


def _adaptive_gauss(g, a, b, panels, tol, budget):
    """Composite Gauss with order doubling; returns (value, err, evals, ok)."""
    evals = 0
    prev = None
    err = math.inf
    while True:
        for order in _ORDERS:
            cost = panels * order
            if evals + cost > budget:
                return (prev if prev is not None else 0j), err, evals, False
            cur, mass = _gauss(g, a, b, panels, order)
            evals += cost
            if prev is not None:
                err = abs(cur - prev)
                if _done(err, cur, mass, tol):
                    return cur, err, evals, err <= tol * (1 + abs(cur))
            prev = cur
        panels *= 2
        prev = None


def quad_hat(f: Callable, lam: float, tol: float = 1e-12) -> QuadratureEstimate:
    """int_{-1}^{1} f(x) e^{i lam x} dx for a smooth, vectorised f."""
    lam = float(lam)
    if not math.isfinite(lam):
        raise ParameterError("lambda must be finite")

    def g(x):
        return np.asarray(f(x)) * np.exp(1j * lam * x)

    v, err, evals, ok = _adaptive_gauss(g, -1.0, 1.0, _panel_count(lam), tol, EVALUATION_BUDGET)
    return QuadratureEstimate(v, err, evals, ok)


def quad_spec_hat(spec: FamilySpec, lam: float, tol: float = 1e-12) -> QuadratureEstimate:
    return quad_hat(lambda x: poly_eval(spec, x), lam, tol)


def _tanh_sinh_end(g_of_dist: Callable, width: float, level: int) -> tuple[complex, float, int]:
    """int_0^width g(d) dd, singular at d = 0, by tanh-sinh with step 2^-level."""
    h = 2.0 ** -level
    t = np.arange(-int(6.5 / h), int(6.5 / h) + 1) * h
    s = (math.pi / 2) * np.sinh(t)
    # y = tanh(s) maps to d = width (1 - y)/2 = width / (1 + e^{2s})
    with np.errstate(over="ignore"):
        d = width / (1.0 + np.exp(2 * s))
        w = h * (math.pi / 2) * np.cosh(t) / np.cosh(s) ** 2 * (width / 2)
    keep = (d > 1e-300) & (w > 0) & np.isfinite(w)
    vals = np.asarray(g_of_dist(d[keep]), dtype=complex) * w[keep]
    return (complex(math.fsum(vals.real.tolist()), math.fsum(vals.imag.tolist())),
            float(np.abs(vals).sum()), int(keep.sum()))


def _adaptive_tanh_sinh(g_of_dist, width, tol, budget):
    prev = None
    evals = 0
    err = math.inf
    for level in range(3, 12):
        cur, mass, used = _tanh_sinh_end(g_of_dist, width, level)
        evals += used
        if prev is not None:
            err = abs(cur - prev)
            if _done(err, cur, mass, tol):
                return cur, err, evals, err <= tol * (1 + abs(cur))
        if evals > budget:
            break
        prev = cur
    return cur, err, evals, False


def quad_weighted_hat(n: int, alpha, beta, lam: float, tol: float = 1e-12) -> QuadratureEstimate:
    """int_{-1}^{1} (1-x)^alpha (1+x)^beta P_n^{(alpha,beta)}(x) e^{i lam x} dx."""
    spec = FamilySpec.jacobi(n, alpha, beta)
    a, b = float(spec.alpha), float(spec.beta)
    lam = float(lam)
    panels = _panel_count(lam)
    width = 2.0 / panels

    def interior(x):
        return (1 - x) ** a * (1 + x) ** b * poly_eval(spec, x) * np.exp(1j * lam * x)

    def near_plus(d):
        x = 1.0 - d
        return d**a * (2.0 - d) ** b * poly_eval(spec, x) * np.exp(1j * lam * x)

    def near_minus(d):
        x = -1.0 + d
        return (2.0 - d) ** a * d**b * poly_eval(spec, x) * np.exp(1j * lam * x)

    budget = EVALUATION_BUDGET
    parts = []
    total_evals = 0
    ok = True
    err = 0.0
    for piece in (
        lambda bud: _adaptive_tanh_sinh(near_minus, width, tol, bud),
        lambda bud: _adaptive_tanh_sinh(near_plus, width, tol, bud),
        lambda bud: (_adaptive_gauss(interior, -1.0 + width, 1.0 - width, panels - 2, tol, bud)
                     if panels > 2 else (0j, 0.0, 0, True)),
    ):
        v, e, used, good = piece(budget - total_evals)
        parts.append(v)
        total_evals += used
        err += e
        ok = ok and good
    value = sum(parts, 0j)
    ok = ok and err <= tol * (1 + abs(value))
    return QuadratureEstimate(value, err, total_evals, ok)
