import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinelab.errors import DomainError, ParameterError, ShapeError
from kinelab.gctrig import (GenComplex, ck_tan, ck_tan_inv, ck_trig, cr_residual, gc_arg,
                            gc_exp, gc_mul, is_zero_divisor, unit)

kappas = st.sampled_from([-1.0, 0.0, 1.0, -2.5, 0.3, 4.0])
small = st.floats(-3, 3, allow_nan=False)


def series_trig(kappa, phi, terms=60):
    """Power series ``C = sum (-kappa)^n phi^(2n) / (2n)!``, ``S = sum (-kappa)^n phi^(2n+1) / (2n+1)!``."""
    c = s = 0.0
    for n in range(terms):
        c += (-kappa) ** n * phi ** (2 * n) / math.factorial(2 * n)
        s += (-kappa) ** n * phi ** (2 * n + 1) / math.factorial(2 * n + 1)
    return c, s


def matrix_rep(z):
    # x + i y  ->  [[x, -kappa y], [y, x]], a faithful real representation of C_kappa
    return np.array([[z.re, -z.kappa * z.im], [z.im, z.re]])


def bisect_tan_inv(kappa, m, lo, hi):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ck_tan(kappa, mid) < m:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_gc_mul_examples():
    i1 = GenComplex(0.0, 1.0, 1.0)
    assert gc_mul(i1, i1).close_to(GenComplex(-1.0, 0.0, 1.0))
    a, b = GenComplex(1.0, 1.0, -1.0), GenComplex(1.0, -1.0, -1.0)
    prod = gc_mul(a, b)
    assert prod.close_to(GenComplex(0.0, 0.0, -1.0))
    m = matrix_rep(a) @ matrix_rep(b)
    assert np.allclose(m[:, 0], [prod.re, prod.im])
    d = GenComplex(0.0, 1.0, 0.0)
    assert gc_mul(d, d).close_to(GenComplex(0.0, 0.0, 0.0))


def test_gc_mul_mismatch():
    with pytest.raises(ParameterError):
        gc_mul(GenComplex(1, 0, 1.0), GenComplex(1, 0, -1.0))


@given(kappas, small, small, small, small)
def test_gc_mul_matches_matrix_oracle(kappa, a, b, c, d):
    x, y = GenComplex(a, b, kappa), GenComplex(c, d, kappa)
    p = gc_mul(x, y)
    assert np.allclose(matrix_rep(p), matrix_rep(x) @ matrix_rep(y), atol=1e-12)


@given(kappas, small, small)
def test_conj_product_is_norm(kappa, a, b):
    z = GenComplex(a, b, kappa)
    zz = z * z.conj()
    assert abs(zz.im) < 1e-12
    assert math.isclose(zz.re, z.norm_sq(), rel_tol=1e-12, abs_tol=1e-12)


def test_zero_divisor_examples():
    assert is_zero_divisor(GenComplex(0.0, 5.0, 0.0))
    assert is_zero_divisor(GenComplex(1.0, 1.0, -1.0))
    assert not is_zero_divisor(GenComplex(1.0, 1.0, 1.0))
    assert is_zero_divisor(GenComplex(0.0, 0.0, 1.0))


def test_inverse_of_zero_divisor_raises():
    with pytest.raises(DomainError):
        GenComplex(1.0, 1.0, -1.0).inverse()


def test_ck_trig_examples():
    assert ck_trig(0.0, 5.0) == (1.0, 5.0)
    c, s = ck_trig(-1.0, 1.0)
    assert c == pytest.approx(1.5430806348152437, abs=1e-12)
    assert s == pytest.approx(1.1752011936438014, abs=1e-12)
    c, s = ck_trig(4.0, math.pi / 4)
    assert c == pytest.approx(0.0, abs=1e-15)
    assert s == pytest.approx(0.5, abs=1e-15)


@given(kappas, small)
def test_ck_trig_pythagoras(kappa, phi):
    c, s = ck_trig(kappa, phi)
    assert abs(c * c + kappa * s * s - 1.0) <= 1e-12 * max(1.0, c * c)


@settings(max_examples=200)
@given(st.floats(-2.5, 2.5), st.floats(-3, 3))
def test_ck_trig_matches_series(kappa, phi):
    if abs(kappa * phi * phi) > 10:
        return
    c, s = ck_trig(kappa, phi)
    sc, ss = series_trig(kappa, phi)
    assert abs(c - sc) < 1e-10 and abs(s - ss) < 1e-10


def test_ck_trig_continuous_at_zero():
    phi = 1.7
    c0, s0 = ck_trig(0.0, phi)
    gaps = [max(abs(ck_trig(e, phi)[0] - c0), abs(ck_trig(e, phi)[1] - s0)) for e in (1e-2, 1e-4, 1e-6)]
    assert gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-5
    gaps = [abs(ck_trig(-e, phi)[0] - c0) for e in (1e-2, 1e-4, 1e-6)]
    assert gaps[2] < 1e-5


def test_ck_tan_inv_examples():
    assert ck_tan_inv(0.0, -0.6) == pytest.approx(-0.6)
    assert ck_tan_inv(-1.0, 0.6) == pytest.approx(bisect_tan_inv(-1.0, 0.6, 0.0, 5.0), abs=1e-12)
    assert ck_tan_inv(-1.0, 0.6) == pytest.approx(0.6931471805599453, abs=1e-12)
    assert ck_tan_inv(1.0, 1.0) == pytest.approx(bisect_tan_inv(1.0, 1.0, 0.0, 1.5), abs=1e-12)
    assert ck_tan_inv(1.0, 1.0) == pytest.approx(math.pi / 4)


@pytest.mark.parametrize("m", [1.0, -1.0, 2.0])
def test_ck_tan_inv_light_cone(m):
    with pytest.raises(DomainError, match="light cone"):
        ck_tan_inv(-1.0, m)


@given(kappas, st.floats(-0.9, 0.9))
def test_tan_round_trip(kappa, m):
    if kappa < 0 and abs(m) * math.sqrt(-kappa) >= 0.99:
        return
    assert ck_tan(kappa, ck_tan_inv(kappa, m)) == pytest.approx(m, abs=1e-10)


def test_gc_exp_examples():
    assert gc_exp(GenComplex(0.0, math.pi, 1.0)).close_to(GenComplex(-1.0, 0.0, 1.0))
    assert gc_exp(GenComplex(0.0, 3.0, 0.0)).close_to(GenComplex(1.0, 3.0, 0.0))
    assert gc_exp(GenComplex(0.0, 0.0, -1.0)).close_to(GenComplex(1.0, 0.0, -1.0))


@given(kappas, small, small)
def test_unit_is_homomorphism(kappa, a, b):
    lhs = unit(a, kappa) * unit(b, kappa)
    assert lhs.close_to(unit(a + b, kappa), 1e-9 * max(1.0, abs(lhs.re), abs(lhs.im)))


@given(kappas, small)
def test_gc_arg_inverts_unit(kappa, theta):
    if kappa > 0 and abs(theta) * math.sqrt(kappa) >= math.pi:
        return
    assert gc_arg(unit(theta, kappa)) == pytest.approx(theta, abs=1e-9)


def _sample(f, kappa, h=0.01):
    t = np.arange(-1, 1 + h / 2, h)
    T, X = np.meshgrid(t, t, indexing="ij")
    out = f(T, X)
    return out[0], out[1]


def test_cr_residual_examples():
    h = 0.01
    u, v = _sample(lambda T, X: (np.full_like(T, 3.0), np.full_like(T, -1.0)), 1.0)
    assert cr_residual(u, v, 1.0, h) == (0.0, 0.0)
    # z^2 = (t^2 - kappa x^2) + i (2 t x)
    u, v = _sample(lambda T, X: (T * T - X * X, 2 * T * X), 1.0)
    r1, r2 = cr_residual(u, v, 1.0, h)
    assert r1 < 1e-3 and r2 < 1e-3
    u, v = _sample(lambda T, X: (T, -X), 1.0)
    r1, _ = cr_residual(u, v, 1.0, h)
    assert r1 == pytest.approx(2.0, abs=1e-3)


@pytest.mark.parametrize("kappa", [-1.0, 0.0, 2.0])
def test_cr_residual_holomorphic_exp(kappa):
    h = 0.01

    def f(T, X):
        c, s = np.vectorize(lambda p: ck_trig(kappa, p))(X)
        return np.exp(T) * c, np.exp(T) * s
    u, v = _sample(f, kappa)
    r1, r2 = cr_residual(u, v, kappa, h)
    assert r1 < 1e-3 and r2 < 1e-3


def test_cr_residual_degenerate_grid():
    with pytest.raises(ShapeError):
        cr_residual(np.zeros((2, 5)), np.zeros((2, 5)), 1.0, 0.1)
