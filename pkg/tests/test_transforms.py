import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from finfourier.errors import ParameterError
from finfourier.polyfamilies import Family, FamilySpec, monomial_coefficients
from finfourier.transforms import (
    CANCELLATION,
    DISCREPANCY,
    FAMILY_METHODS,
    INEXACT,
    SMALL_LAMBDA,
    MethodId,
    hat,
    hat_auto,
    hat_small_lambda,
    hat_threshold,
    jacobi_hat,
    jacobi_hat_zero,
    jacobi_zero_antiderivative,
    jacobi_zero_exact,
    jacobi_zero_printed,
    raw_closed_form,
    weighted_jacobi_hat,
)


def reference(spec, lam):
    """40-digit quadrature of the exact-coefficient polynomial."""
    mpmath.mp.dps = 40
    c = [mpmath.mpf(q.numerator) / q.denominator for q in monomial_coefficients(spec).coeffs]
    x0 = mpmath.mpf(lam)

    def f(x):
        acc = mpmath.mpf(0)
        for ck in reversed(c):
            acc = acc * x + ck
        return acc * mpmath.expj(x0 * x)

    return complex(mpmath.quad(f, mpmath.linspace(-1, 1, 2 + int(abs(lam)))))


SPECS = [
    FamilySpec.legendre(9),
    FamilySpec.jacobi(8, Fraction(-3, 10), Fraction(7, 10)),
    FamilySpec.jacobi(5, 2, 3),
    FamilySpec.gegenbauer(7, Fraction(5, 2)),
    FamilySpec.chebyshev_u(10),
    FamilySpec.chebyshev_t(11),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
@pytest.mark.parametrize("lam", [0.3, 4.0, 23.5, -61.0])
def test_every_method_matches_reference(spec, lam):
    ref = reference(spec, lam)
    methods = FAMILY_METHODS[spec.family] + (MethodId.VIA_JACOBI, MethodId.SMALL_LAMBDA_SERIES)
    for m in methods:
        if m is MethodId.SMALL_LAMBDA_SERIES and abs(lam) >= hat_threshold(spec.n):
            continue
        r = hat(spec, lam, m)
        assert abs(r.value - ref) <= 1e-12 * abs(ref), m
        if m is not MethodId.T_CLOSED or spec.n:
            raw = raw_closed_form(spec, lam, m) if m in FAMILY_METHODS[spec.family] else r.value
            assert abs(raw - ref) <= 1e-12 * abs(ref), m
    auto = hat_auto(spec, lam)
    assert abs(auto.value - ref) <= 1e-12 * abs(ref)
    assert auto.est_rel_err < 1e-12
    assert CANCELLATION not in auto.flags


def test_small_lambda_routing_and_flag():
    spec = FamilySpec.legendre(10)
    assert hat_threshold(10) == 5.0
    below = hat(spec, 4.9, MethodId.L_HYP)
    assert below.method is MethodId.SMALL_LAMBDA_SERIES and SMALL_LAMBDA in below.flags
    above = hat(spec, 5.0, MethodId.L_HYP)
    assert above.method is MethodId.L_HYP and SMALL_LAMBDA not in above.flags
    with pytest.raises(ParameterError):
        hat_small_lambda(spec, 5.0)


def test_series_at_zero_is_exact_moment():
    assert hat_auto(FamilySpec.legendre(0), 0.0).value == 2
    assert hat_auto(FamilySpec.legendre(6), 0.0).value == 0
    assert hat_auto(FamilySpec.chebyshev_t(2), 0.0).value == pytest.approx(-2 / 3, rel=1e-15)


def test_high_degree_transform_is_accurate():
    spec = FamilySpec.legendre(200)
    for lam in (30.0, 99.99, 100.0, 150.0):
        a = hat(spec, lam, MethodId.L_CLOSED).value
        b = hat(spec, lam, MethodId.L_BESSEL).value
        assert abs(a - b) <= 1e-12 * abs(b)
    below = hat_auto(spec, math.nextafter(100.0, 0)).value
    at = hat_auto(spec, 100.0).value
    assert abs(below - at) <= 1e-12 * abs(at)


@given(st.sampled_from(SPECS), st.floats(0.0, 120.0))
@settings(max_examples=60, deadline=None)
def test_conjugate_symmetry(spec, lam):
    v = hat_auto(spec, lam).value
    w = hat_auto(spec, -lam).value
    assert abs(w - v.conjugate()) <= 1e-13 * max(abs(v), 1e-300)


def test_method_parsing_and_validation():
    assert MethodId.parse("l-closed") is MethodId.L_CLOSED
    assert MethodId.parse("small-λ-series") is MethodId.SMALL_LAMBDA_SERIES
    with pytest.raises(ParameterError):
        MethodId.parse("L-fancy")
    with pytest.raises(ParameterError):
        hat(FamilySpec.legendre(3), 2.0, MethodId.J_EK)
    with pytest.raises(ParameterError):
        hat(FamilySpec.jacobi(3, 1, 0), 2.0, MethodId.J_LAMBDA0)
    with pytest.raises(ParameterError):
        hat(FamilySpec.legendre(3), math.nan)


def test_inexact_parameters_are_flagged():
    r = jacobi_hat(3, 1 / 3, 0.0, 5.0)
    assert INEXACT in r.flags
    assert INEXACT not in jacobi_hat(3, 0.5, 0.0, 5.0).flags


# -- lambda = 0 for Jacobi --------------------------------------------------------


def test_lambda_zero_values():
    r = jacobi_hat_zero(1, 1, 0)
    assert r.value == 1 and r.method is MethodId.J_LAMBDA0
    assert DISCREPANCY in r.flags
    assert jacobi_zero_printed(1, 1, 0) != 1
    for n in range(1, 11):
        assert jacobi_zero_exact(n, 0, 0) == 0
    routed = hat(FamilySpec.jacobi(2, 1, 0), 0.0, MethodId.J_BOUNDARY)
    assert routed.method is MethodId.J_LAMBDA0 and SMALL_LAMBDA in routed.flags
    assert hat_auto(FamilySpec.jacobi(2, 1, 0), 0.0).method is MethodId.J_LAMBDA0


@given(st.integers(0, 25), st.fractions("-9/10", 5, max_denominator=12),
       st.fractions("-9/10", 5, max_denominator=12))
@settings(max_examples=80, deadline=None)
def test_antiderivative_formula_is_exact(n, a, b):
    anti = jacobi_zero_antiderivative(n, a, b)
    if anti is not None:
        assert anti == jacobi_zero_exact(n, a, b)


# -- weighted transform -------------------------------------------------------------


def test_weighted_at_zero_is_orthogonality():
    assert weighted_jacobi_hat(3, 1, 0, 0.0) == 0
    assert weighted_jacobi_hat(0, 0, 0, 0.0) == 2
    assert weighted_jacobi_hat(0, 1, 0, 0.0).real == pytest.approx(2.0, rel=1e-15)


def test_weighted_reduces_to_unweighted_for_legendre():
    for lam in (0.7, 9.0, -40.0):
        for n in (0, 3, 8):
            v = weighted_jacobi_hat(n, 0, 0, lam)
            w = hat_auto(FamilySpec.legendre(n), lam).value
            assert abs(v - w) <= 1e-12 * abs(w)


def test_family_method_table_is_complete():
    assert set(FAMILY_METHODS) == set(Family)
    assert len(FAMILY_METHODS[Family.LEGENDRE]) == 4
