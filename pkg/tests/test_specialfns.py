import math
from fractions import Fraction

import mpmath
import pytest

from finfourier.errors import ParameterError
from finfourier.specialfns import (
    HypergeometricSpec,
    kummer_1f1,
    spherical_bessel_j,
    terminating_pfq,
)


def _sph(n, x):
    mpmath.mp.dps = 40
    x = mpmath.mpf(x)
    return float(mpmath.sqrt(mpmath.pi / (2 * x)) * mpmath.besselj(n + 0.5, x))


@pytest.mark.parametrize("n", [0, 1, 2, 10, 30, 80])
@pytest.mark.parametrize("x", [1e-3, 0.5, math.pi, 10.0, 80.0, 300.0])
def test_spherical_bessel_against_mpmath(n, x):
    ref = _sph(n, x)
    assert spherical_bessel_j(n, x) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_spherical_bessel_special_values():
    assert spherical_bessel_j(0, 0.0) == 1.0
    assert spherical_bessel_j(3, 0.0) == 0.0
    assert spherical_bessel_j(3, -2.0) == -spherical_bessel_j(3, 2.0)


def test_terminating_pfq_matches_polynomial():
    # 2F1(-2, 3; 1; z) = 1 - 6 z + 6 z^2
    z = 0.3 + 0.1j
    v = terminating_pfq(HypergeometricSpec((-2, 3), (1,), z), 2)
    assert abs(v - (1 - 6 * z + 6 * z * z)) < 1e-15


def test_terminating_pfq_rejects_poles():
    with pytest.raises(ParameterError):
        terminating_pfq(HypergeometricSpec((-3,), (-1,), 1.0), 3)
    with pytest.raises(ParameterError):
        terminating_pfq(HypergeometricSpec((-3,), (1,), 1.0), -1)


CASES = [
    (1, 2, 0.5j), (1, 2, 62.83185307179586j), (3, 6, -17j), (2.5, 5, 40j),
    (1.7, 3.4, 200j), (0.5, 1.5, -3.0), (4, 7, 12.0), (-3, 2, 5.0), (2, 3, 1e-3j),
    (13, 27, 125.66370614359172j), (1.5, 2.5, 900j),
]


@pytest.mark.parametrize("a,b,z", CASES)
def test_kummer_against_mpmath(a, b, z):
    mpmath.mp.dps = 60
    ref = complex(mpmath.hyp1f1(a, b, z))
    assert abs(kummer_1f1(a, b, z) - ref) <= 1e-13 * abs(ref)


def test_kummer_near_a_zero_is_relatively_accurate():
    # 1F1(1; 2; -2 i lam) vanishes at lam = k pi; at the double nearest 20 pi
    # the value is ~1e-18 and must still carry full relative accuracy
    lam = 20 * math.pi
    mpmath.mp.dps = 60
    ref = complex(mpmath.hyp1f1(1, 2, -2j * mpmath.mpf(lam)))
    assert abs(ref) < 1e-16
    assert abs(kummer_1f1(1, 2, -2j * lam) - ref) <= 1e-13 * abs(ref)


def test_kummer_exact_rational_parameters():
    assert kummer_1f1(Fraction(1, 2), Fraction(3, 2), 0) == 1


def test_kummer_argument_cap_and_poles():
    with pytest.raises(ParameterError):
        kummer_1f1(1, 2, 2e4j)
    with pytest.raises(ParameterError):
        kummer_1f1(1, -2, 1.0)
