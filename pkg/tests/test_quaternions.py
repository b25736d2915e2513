import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kinelab.errors import DomainError, ParameterError, ShapeError
from kinelab.gctrig import GenComplex
from kinelab.kinematics import one_param
from kinelab.quaternions import (CurvatureParams, GenQuaternion, QuatMatrix, adjoint_matrix,
                                 adjoint_rotate, basis, bracket, homogeneous_metric, killing_form,
                                 matrix_to_q, q_exp_pure, q_inner, q_mul, q_to_matrix,
                                 unit_from_pure)
from kinelab.verify import SIGN_PATTERNS, killing_double_sum, series_expm, structure_tensor

patterns = st.sampled_from(SIGN_PATTERNS)
coord = st.floats(-2, 2, allow_nan=False)
quad = st.tuples(coord, coord, coord, coord)
EL = CurvatureParams(1.0, 1.0)


def Q(arr, params):
    return GenQuaternion.from_array(arr, params)


def left_matrix(a: GenQuaternion) -> np.ndarray:
    """Real 4x4 matrix of ``b -> a b``, assembled column by column from the unit table."""
    k1, k2 = a.params
    # products e_m * e_n of basis units (1, i, j, k) as (coefficient, index)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-k2, 0), (1, 2): (1, 3), (1, 3): (-k2, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-k1, 0), (2, 3): (k1, 1),
        (3, 0): (1, 3), (3, 1): (k2, 2), (3, 2): (-k1, 1), (3, 3): (-k1 * k2, 0),
    }
    x = a.as_array()
    M = np.zeros((4, 4))
    for m in range(4):
        for n in range(4):
            c, idx = table[(m, n)]
            M[idx, n] += x[m] * c
    return M


def test_product_examples():
    for params in SIGN_PATTERNS:
        _, i, j, k = basis(params)
        assert q_mul(i, j).close_to(k)
        assert q_mul(k, i).close_to(j * params.kappa2)
        assert q_mul(j, k).close_to(i * params.kappa1)
    one, i, j, _ = basis(EL)
    assert q_mul(one + i, one + j).close_to(Q([1, 1, 1, 1], EL))


def test_mismatched_params():
    with pytest.raises(ParameterError):
        q_mul(basis(EL)[1], basis(CurvatureParams(1.0, -1.0))[1])


@given(patterns, quad, quad)
def test_product_matches_table_oracle(params, a, b):
    qa, qb = Q(a, params), Q(b, params)
    assert np.allclose(q_mul(qa, qb).as_array(), left_matrix(qa) @ qb.as_array(), atol=1e-12)


@given(patterns, quad, quad, quad)
def test_associativity(params, a, b, c):
    qa, qb, qc = Q(a, params), Q(b, params), Q(c, params)
    assert np.allclose(((qa * qb) * qc).as_array(), (qa * (qb * qc)).as_array(), atol=1e-11)


@given(patterns, quad, quad)
def test_norm_composition(params, a, b):
    qa, qb = Q(a, params), Q(b, params)
    assert (qa * qb).norm_sq() == pytest.approx(qa.norm_sq() * qb.norm_sq(), abs=1e-10)


@given(patterns, quad)
def test_conjugate_gives_norm(params, a):
    q = Q(a, params)
    assert (q * q.conj()).close_to(GenQuaternion.scalar(q.norm_sq(), params), 1e-11)


def test_matrix_examples():
    for params in SIGN_PATTERNS:
        one, _, j, _ = basis(params)
        m = q_to_matrix(one)
        assert [e.re for e in m.entries()] == [1, 0, 0, 1]
        m = q_to_matrix(j)
        assert [(e.re + 0.0, e.im + 0.0) for e in m.entries()] == [
            (0, 0), (1, 0), (-params.kappa1 + 0.0, 0), (0, 0)]


@given(patterns, quad, quad)
def test_matrix_homomorphism_and_det(params, a, b):
    qa, qb = Q(a, params), Q(b, params)
    assert q_to_matrix(qa * qb).max_abs_diff(q_to_matrix(qa) @ q_to_matrix(qb)) < 1e-12
    det = q_to_matrix(qa).det()
    assert det.re == pytest.approx(qa.norm_sq(), abs=1e-12) and abs(det.im) < 1e-12
    assert matrix_to_q(q_to_matrix(qa), params).close_to(qa, 1e-14)


def test_matrix_to_q_rejects_bad_shape():
    z = lambda a, b: GenComplex(a, b, 1.0)
    with pytest.raises(ShapeError):
        matrix_to_q(QuatMatrix(z(1, 0), z(0, 0), z(0, 0), z(2, 0)), EL)


def test_exp_examples():
    _, i, j, _ = basis(EL)
    assert q_exp_pure(i, math.pi).close_to(GenQuaternion.scalar(-1.0, EL))
    dual = CurvatureParams(1.0, 0.0)
    assert q_exp_pure(basis(dual)[1], 3.0).close_to(Q([1, 3, 0, 0], dual))
    hyp = CurvatureParams(-1.0, 1.0)
    assert q_exp_pure(basis(hyp)[2], 1.0).close_to(Q([math.cosh(1), 0, math.sinh(1), 0], hyp), 1e-12)
    with pytest.raises(DomainError):
        q_exp_pure(Q([1, 1, 0, 0], EL), 1.0)


@given(patterns, coord, coord, coord, st.floats(-1.5, 1.5))
def test_exp_matches_series(params, y, u, v, t):
    p = Q([0, y, u, v], params)
    L = left_matrix(p) * t
    expected = series_expm(L, 40)[:, 0]
    assert np.allclose(q_exp_pure(p, t).as_array(), expected, atol=1e-9 * max(1.0, np.abs(expected).max()))


def test_inner_examples():
    for params in SIGN_PATTERNS:
        one, i, j, _ = basis(params)
        assert q_inner(one, one) == 1.0
        assert q_inner(i, i) == params.kappa2
        assert q_inner(i, j) == 0.0


@given(patterns, quad, quad)
def test_inner_polarizes_norm(params, a, b):
    qa, qb = Q(a, params), Q(b, params)
    ab = qa * qb.conj() + qb * qa.conj()
    assert q_inner(qa, qb) == pytest.approx(ab.x / 2.0, abs=1e-12)


def test_adjoint_rotate_examples():
    one, i, j, k = basis(EL)
    assert adjoint_rotate(one, j).close_to(j)
    a = q_exp_pure(i, math.pi / 4)
    assert adjoint_rotate(a, j).close_to(k, 1e-12)
    assert adjoint_rotate(a, j).close_to(q_mul(q_mul(a, j), a.conj()))
    for params in SIGN_PATTERNS:
        _, i, _, _ = basis(params)
        assert adjoint_rotate(q_exp_pure(i, 0.7), i).close_to(i, 1e-12)
    with pytest.raises(DomainError):
        adjoint_rotate(Q([2, 0, 0, 0], EL), j)


def test_adjoint_matrix_examples():
    one, i, _, _ = basis(EL)
    assert np.array_equal(adjoint_matrix(one), np.eye(3))
    m = adjoint_matrix(q_exp_pure(i, math.pi / 2))
    assert np.allclose(m, np.diag([1.0, -1.0, -1.0]), atol=1e-12)


@pytest.mark.parametrize("params", SIGN_PATTERNS, ids=str)
def test_double_cover(params):
    _, i, _, _ = basis(params)
    for theta in np.linspace(-2.5, 2.5, 11):
        assert np.allclose(adjoint_matrix(q_exp_pure(i, theta / 2)), one_param("K", theta, params), atol=1e-12)


@given(patterns, coord, coord, coord)
def test_adjoint_preserves_inner(params, y, u, v):
    a = unit_from_pure(0.3 * y, 0.3 * u, 0.3 * v, params)
    p = Q([0, y, u, v], params)
    r = adjoint_rotate(a, p)
    assert abs(r.x) < 1e-9
    assert q_inner(r, r) == pytest.approx(q_inner(p, p), abs=1e-9 * max(1.0, abs(q_inner(p, p))))


def test_brackets_of_units():
    for params in SIGN_PATTERNS:
        _, i, j, k = basis(params)
        k1, k2 = params
        assert bracket(i, j).close_to(k * 2.0, 0.0)
        assert bracket(j, k).close_to(i * (2.0 * k1), 0.0)
        assert bracket(k, i).close_to(j * (2.0 * k2), 0.0)


def test_killing_examples():
    assert np.array_equal(killing_form(EL), np.diag([-2.0, -2.0, -2.0]))
    assert np.array_equal(killing_form(CurvatureParams(0.0, -1.0)), np.diag([2.0, 0.0, 0.0]))


@pytest.mark.parametrize("params", SIGN_PATTERNS, ids=str)
def test_killing_brute_force(params):
    assert np.array_equal(killing_double_sum(structure_tensor(params)), killing_form(params))


def test_homogeneous_metric_examples():
    assert np.array_equal(homogeneous_metric(CurvatureParams(0.0, -1.0), "by-K"), np.diag([1.0, -1.0]))
    assert np.array_equal(homogeneous_metric(CurvatureParams(0.0, 1.0), "by-H"), np.diag([1.0, 0.0]))
    assert np.array_equal(homogeneous_metric(EL, "by-P"), np.eye(2))
    with pytest.raises(ParameterError):
        homogeneous_metric(EL, "by-Q")
