import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from finfourier.errors import DomainError
from finfourier.operator_method import (
    InverseLambdaPoly,
    ab_polynomials,
    explicit_pair,
    operator_hat,
    sinc_derivative,
)
from finfourier.polyfamilies import FamilySpec
from finfourier.transforms import MethodId, hat, hat_auto


def test_first_pairs():
    p0, p1 = ab_polynomials(0), ab_polynomials(1)
    assert p0.a.coeffs == {1: 1} and not p0.b.coeffs
    # (sin x / x)' = cos x / x - sin x / x^2
    assert p1.a.coeffs == {2: -1} and p1.b.coeffs == {1: 1}


def test_recurrence_equals_explicit_expansion():
    for n in range(41):
        rec, exp = ab_polynomials(n), explicit_pair(n)
        assert rec.a == exp.a and rec.b == exp.b
        assert rec.a.is_integral() and rec.b.is_integral()


@pytest.mark.parametrize("n", [0, 1, 2, 5, 12])
@pytest.mark.parametrize("lam", [0.5, 2.0, 17.0, -40.0])
def test_sinc_derivative_against_mpmath(n, lam):
    mpmath.mp.dps = 40
    ref = float(mpmath.diff(lambda x: mpmath.sin(x) / x, mpmath.mpf(lam), n))
    assert sinc_derivative(n, lam) == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_small_argument_is_refused():
    with pytest.raises(DomainError):
        sinc_derivative(3, 0.49)
    with pytest.raises(DomainError):
        operator_hat(FamilySpec.legendre(3), 0.2)


def test_inverse_lambda_poly_algebra():
    p = InverseLambdaPoly({1: Fraction(2), 3: Fraction(-1)})
    assert (p - p).coeffs == {}
    assert p.derivative().coeffs == {2: -2, 4: 3}
    assert p(2.0) == pytest.approx(1.0 - 1 / 8)
    assert p.exact_value(Fraction(2)) == Fraction(7, 8)
    with pytest.raises(ValueError):
        InverseLambdaPoly({0: Fraction(1)})


SPECS = st.one_of(
    st.builds(FamilySpec.legendre, st.integers(0, 15)),
    st.builds(FamilySpec.jacobi, st.integers(0, 15), st.sampled_from([0, 1, 0.5, -0.3]),
              st.sampled_from([0, 2, 0.7])),
    st.builds(FamilySpec.gegenbauer, st.integers(0, 15), st.sampled_from([0.5, 1, 2.5])),
    st.builds(FamilySpec.chebyshev_t, st.integers(0, 15)),
    st.builds(FamilySpec.chebyshev_u, st.integers(0, 15)),
)


@given(SPECS, st.floats(0.5, 80.0), st.booleans())
@settings(max_examples=80, deadline=None)
def test_operator_matches_auto(spec, lam, negate):
    lam = -lam if negate else lam
    v = operator_hat(spec, lam).value
    w = hat_auto(spec, lam).value
    assert abs(v - w) <= 1e-11 * max(abs(w), 1e-300)


def test_operator_method_through_hat():
    spec = FamilySpec.chebyshev_u(6)
    r = hat(spec, math.pi, MethodId.OPERATOR)
    assert r.method is MethodId.OPERATOR
    # below the series threshold hat answers from the series instead
    assert hat(spec, 1.0, MethodId.OPERATOR).method is MethodId.SMALL_LAMBDA_SERIES
