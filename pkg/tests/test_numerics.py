import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from finfourier import numerics
from finfourier.errors import ParameterError
from finfourier.numerics import (
    compensated_sum,
    exp_partial_sum,
    moment_kernel,
    moment_kernel_unit,
    shifted_factorial,
    switch_threshold,
)

finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(st.lists(finite, min_size=1, max_size=40), st.randoms())
def test_compensated_sum_is_order_independent(xs, rnd):
    shuffled = xs[:]
    rnd.shuffle(shuffled)
    assert compensated_sum(xs) == compensated_sum(shuffled)


def test_compensated_sum_recovers_cancelled_terms():
    assert compensated_sum([1e16, 1.0, -1e16, 1j, 1e-3j]) == complex(1.0, 1.001)


def test_exp_partial_sum():
    assert exp_partial_sum(0, 3.0) == 1.0
    assert exp_partial_sum(2, 2.0) == 5.0
    assert abs(exp_partial_sum(60, 1j) - complex(math.cos(1), math.sin(1))) < 1e-15


@given(st.integers(0, 12), st.fractions(-5, 5, max_denominator=9))
def test_shifted_factorial_recurrence_is_exact(n, a):
    assert shifted_factorial(a, n + 1) == shifted_factorial(a, n) * (a + n)
    assert isinstance(shifted_factorial(a, n) * Fraction(1), Fraction)


def test_shifted_factorial_rejects_bad_n():
    with pytest.raises(ParameterError):
        shifted_factorial(1, -1)
    with pytest.raises(ParameterError):
        shifted_factorial(1, 1.5)


def test_switch_threshold():
    assert switch_threshold(0) == 1.0
    assert switch_threshold(2) == 1.0
    assert switch_threshold(30) == 15.0


def _phi_reference(k, lam):
    mpmath.mp.dps = 40
    x = mpmath.mpf(lam)
    return complex(mpmath.quad(lambda t: t**k * mpmath.expj(x * t), [-1, 0, 1]))


@pytest.mark.parametrize("k", [0, 1, 2, 7, 20, 41])
@pytest.mark.parametrize("lam", [1e-8, 0.3, 2.0, 9.99, 10.0, 25.0, -13.0])
def test_moment_kernel_against_reference(k, lam):
    r = moment_kernel(k, lam)
    ref = _phi_reference(k, lam)
    assert abs(r.value - ref) <= max(1e-12 * abs(ref), 1e-300) + r.est_rel_err * abs(ref)
    assert r.est_rel_err < 1e-6 or r.branch == "closed-form"
    # exactly real for even k, exactly imaginary for odd k
    assert (r.value.imag if k % 2 == 0 else r.value.real) == 0.0


def test_moment_kernel_branches():
    assert moment_kernel(10, 4.9).branch == "series"
    assert moment_kernel(10, 5.0).branch == "closed-form"
    assert moment_kernel(4, 0.0).value == 2 / 5


@given(st.integers(0, 30), st.floats(0.01, 60))
@settings(max_examples=60)
def test_moment_kernel_conjugate_symmetry(k, lam):
    assert moment_kernel(k, -lam).value == moment_kernel(k, lam).value.conjugate()


@pytest.mark.parametrize("k,lam", [(0, 0.5), (3, 2.0), (5, 8.0), (12, -30.0)])
def test_moment_kernel_unit(k, lam):
    mpmath.mp.dps = 30
    ref = complex(mpmath.quad(lambda t: t**k * mpmath.expj(lam * t), [0, 1]))
    assert abs(moment_kernel_unit(k, lam).value - ref) <= 1e-12 * abs(ref)


def test_degree_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FINFOURIER_MAX_DEGREE", "5")
    assert numerics.max_degree() == 5
    with pytest.raises(ParameterError):
        numerics.check_degree(6)
    monkeypatch.setenv("FINFOURIER_MAX_DEGREE", "many")
    with pytest.raises(ParameterError):
        numerics.max_degree()
    monkeypatch.delenv("FINFOURIER_MAX_DEGREE")
    assert numerics.max_degree() == numerics.DEFAULT_MAX_DEGREE


@pytest.mark.parametrize("bad", [-1, 2.5, True])
def test_check_degree_rejects(bad):
    with pytest.raises(ParameterError):
        numerics.check_degree(bad)
