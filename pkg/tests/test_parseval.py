import math

import mpmath
import pytest

from finfourier.parseval import (
    SQRT2,
    fourier_coeff_p,
    fourier_coeff_p_display,
    fourier_coeff_q,
    fourier_coeff_q_kummer,
    fourier_coeff_q_printed,
    jacobi_norm,
    parseval_partial_sum,
    w_function,
    w_identity_residual,
)


@pytest.mark.parametrize("n,a,b", [(0, 0, 0), (1, 0, 0), (3, 1, 0), (4, 0.5, 0.5), (6, 2, 3),
                                   (5, -0.3, 0.7), (150, 1, 0)])
def test_jacobi_norm(n, a, b):
    mpmath.mp.dps = 30
    a_, b_ = mpmath.mpf(a), mpmath.mpf(b)
    ref = (2 ** (a_ + b_ + 1) / (2 * n + a_ + b_ + 1) * mpmath.gamma(n + a_ + 1)
           * mpmath.gamma(n + b_ + 1) / (mpmath.gamma(n + a_ + b_ + 1) * mpmath.factorial(n)))
    assert jacobi_norm(n, a, b) == pytest.approx(float(ref), rel=1e-13)
    if n < 10:
        quad = mpmath.quad(lambda x: (1 - x) ** a_ * (1 + x) ** b_
                           * mpmath.jacobi(n, a_, b_, x) ** 2, [-1, 0.3, 1])
        assert jacobi_norm(n, a, b) == pytest.approx(float(quad), rel=1e-10)


def test_first_coefficient_of_p1():
    # (1/sqrt 2) int x e^{-i pi x} dx = -2i/(pi sqrt 2)
    assert fourier_coeff_p(1, 0, 0, 1) == pytest.approx(-2j / (math.pi * SQRT2), abs=1e-16)
    assert fourier_coeff_p(0, 0, 0, 0) == pytest.approx(SQRT2)


def test_printed_displays_are_off_by_known_factors():
    for n, a, b in ((1, 0, 0), (3, 1, 0), (2, 0.5, 0.5)):
        for j in (1, -2, 5):
            p = fourier_coeff_p(n, a, b, j)
            assert abs(fourier_coeff_p_display(n, a, b, j) * SQRT2 - p) <= 1e-13 * abs(p)
    for m in (0, 1, 3):
        for j in (1, 4):
            q = fourier_coeff_q(m, 1, 0, j)
            printed = fourier_coeff_q_printed(m, 1, 0, j)
            assert abs(printed * (-1j * math.pi) ** m - q) <= 1e-12 * abs(q)


@pytest.mark.parametrize("m,a,b", [(0, 0, 0), (2, 1, 0), (4, 0.5, 0.5), (6, 2, 3),
                                   (3, -0.3, 0.7)])
def test_kummer_form(m, a, b):
    for j in range(-30, 31):
        x, y = fourier_coeff_q(m, a, b, j), fourier_coeff_q_kummer(m, a, b, j)
        assert abs(x - y) <= 1e-12 * max(abs(x), abs(y), 1e-300)


def test_product_identity_through_w():
    n, m, a, b = 1, 2, 0, 0
    for j in (1, 2, -3):
        k = ((1j * math.pi) ** (m - 1) * 2 ** (m + a + b)
             * math.exp(math.lgamma(m + a + 1) + math.lgamma(m + b + 1)
                        - math.lgamma(2 * m + a + b + 2))
             / (math.factorial(n) * math.factorial(m)))
        lhs = fourier_coeff_p(n, a, b, j) * fourier_coeff_q(m, a, b, j).conjugate()
        rhs = k * ((-1) ** n * w_function(n, m, a, b, j, True)
                   - (-1) ** (m - 1) * w_function(n, m, a, b, -j, False))
        assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


def test_w_identity_residual():
    assert w_identity_residual(0, 1, 0, 0, 64) <= 1e-12
    with pytest.raises(ValueError):
        w_function(1, 1, 0, 0, 0)


def test_smooth_case_converges_fast():
    rep = parseval_partial_sum(2, 2, 0, 0, 512)
    assert rep.target == pytest.approx(0.4)
    assert rep.residual <= 1e-8
    assert [j for j, _ in rep.octaves] == [1, 2, 4, 8, 16, 32, 64, 128, 256, 512]


def test_jump_case_converges_like_one_over_j():
    rep = parseval_partial_sum(1, 1, 0, 0, 256)
    rep2 = parseval_partial_sum(1, 1, 0, 0, 512)
    assert rep2.residual == pytest.approx(rep.residual / 2, rel=0.05)
    assert rep2.residual <= 2 * rep2.tail_est


def test_orthogonal_pair_sums_to_zero():
    rep = parseval_partial_sum(0, 2, 0, 0, 128)
    assert rep.target == 0.0 and rep.residual <= 1e-14


def test_partial_sum_rejects_bad_j():
    with pytest.raises(ValueError):
        parseval_partial_sum(1, 1, 0, 0, 0)
