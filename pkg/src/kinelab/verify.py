"""Cross-module invariant suite, run by ``kinelab verify``.

Each check returns its worst residual; a check passes when the residual
does not exceed its tolerance.  Exact checks have residual 0 on the
nine unit sign patterns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from kinelab import fibration as fib
from kinelab import kinematics as kin
from kinelab import quaternions as qt
from kinelab.errors import DomainError
from kinelab.gctrig import GenComplex, ck_trig
from kinelab.projective import ChartPoint
from kinelab.quaternions import CurvatureParams, GenQuaternion

SIGN_PATTERNS = [CurvatureParams(float(a), float(b))
                 for a, b in itertools.product((-1, 0, 1), repeat=2)]


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


def series_expm(A: np.ndarray, terms: int = 30) -> np.ndarray:
    out = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for n in range(1, terms):
        term = term @ A / n
        out = out + term
    return out


def random_quaternion(rng: np.random.Generator, params: CurvatureParams, scale: float = 1.0) -> GenQuaternion:
    return GenQuaternion.from_array(rng.uniform(-scale, scale, 4), params)


def random_chart_point(rng: np.random.Generator, params: CurvatureParams, radius: float = 0.5) -> ChartPoint:
    """A w-chart point whose line meets the sphere."""
    while True:
        a, b = rng.uniform(-radius, radius, 2)
        c = ChartPoint(GenComplex(float(a), float(b), params.kappa2), "w")
        if 1.0 + params.kappa1 * c.value.norm_sq() > 0.1:
            return c


def random_sphere_point(rng: np.random.Generator, params: CurvatureParams) -> GenQuaternion:
    c = random_chart_point(rng, params)
    theta = float(rng.uniform(-1.0, 1.0))
    return fib.fiber_points(c, params, [theta])[0]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def check_trig(params, rng, n):
    worst = 0.0
    for kappa in (params.kappa1, params.kappa2, params.kappa1 * params.kappa2):
        for phi in rng.uniform(-3, 3, n):
            c, s = ck_trig(kappa, phi)
            worst = max(worst, abs(c * c + kappa * s * s - 1.0) / max(1.0, c * c))
    return worst


def check_generator_brackets(params, rng, n):
    H, P, K = kin.generators(params)
    c = lambda a, b: a @ b - b @ a
    return float(max(np.max(np.abs(c(K, H) - P)),
                     np.max(np.abs(c(K, P) + params.kappa2 * H)),
                     np.max(np.abs(c(H, P) - params.kappa1 * K))))


def check_one_param_series(params, rng, n):
    H, P, K = kin.generators(params)
    worst = 0.0
    for name, G in (("H", H), ("P", P), ("K", K)):
        for t in rng.uniform(-3, 3, n):
            worst = max(worst, float(np.max(np.abs(kin.one_param(name, t, params) - series_expm(t * G)))))
    return worst


def check_so_form(params, rng, n):
    F = kin.ambient_form(params)
    worst = 0.0
    for name in ("H", "P", "K"):
        for t in rng.uniform(-3, 3, n):
            M = kin.one_param(name, t, params)
            worst = max(worst, float(np.max(np.abs(M.T @ F @ M - F))) / max(1.0, float(np.max(np.abs(M))) ** 2))
    return worst


def check_associativity(params, rng, n):
    worst = 0.0
    for _ in range(n):
        a, b, c = (random_quaternion(rng, params) for _ in range(3))
        lhs = (a * b) * c
        rhs = a * (b * c)
        worst = max(worst, float(np.max(np.abs(lhs.as_array() - rhs.as_array()))))
    return worst


def check_norm_composition(params, rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = random_quaternion(rng, params), random_quaternion(rng, params)
        worst = max(worst, _rel((a * b).norm_sq(), a.norm_sq() * b.norm_sq()))
    return worst


def check_matrix_homomorphism(params, rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = random_quaternion(rng, params), random_quaternion(rng, params)
        lhs = qt.q_to_matrix(a * b)
        rhs = qt.q_to_matrix(a) @ qt.q_to_matrix(b)
        worst = max(worst, lhs.max_abs_diff(rhs))
    return worst


def check_quaternion_brackets(params, rng, n):
    _, i, j, k = qt.basis(params)
    k1, k2 = params
    d = [qt.bracket(i, j) - k * 2.0, qt.bracket(j, k) - i * (2.0 * k1), qt.bracket(k, i) - j * (2.0 * k2)]
    K, H, P = qt.kinematical_basis(params)
    d += [qt.bracket(K, H) - P, qt.bracket(K, P) + H * k2, qt.bracket(H, P) - K * k1]
    return float(max(np.max(np.abs(x.as_array())) for x in d))


def structure_tensor(params: CurvatureParams) -> np.ndarray:
    """``C[a, b, c]`` with ``[E_a, E_b] = C[a, b, c] E_c`` on the basis ``(K, H, P)``."""
    E = qt.kinematical_basis(params)
    C = np.zeros((3, 3, 3))
    for a, b in itertools.product(range(3), repeat=2):
        r = qt.bracket(E[a], E[b])
        C[a, b] = 2.0 * np.array([r.y, r.u, r.v])
    return C


def killing_double_sum(C: np.ndarray) -> np.ndarray:
    g = np.zeros((3, 3))
    for i, j, r, s in itertools.product(range(3), repeat=4):
        g[i, j] += C[i, s, r] * C[j, r, s]
    return g


def check_killing(params, rng, n):
    return float(np.max(np.abs(killing_double_sum(structure_tensor(params)) - qt.killing_form(params))))


def check_double_cover(params, rng, n):
    _, i, _, _ = qt.basis(params)
    worst = 0.0
    for theta in rng.uniform(-3, 3, n):
        a = qt.q_exp_pure(i, theta / 2.0)
        worst = max(worst, float(np.max(np.abs(qt.adjoint_matrix(a) - kin.one_param("K", theta, params)))))
    return worst


def check_fiber_projection(params, rng, n):
    worst = 0.0
    for _ in range(n):
        c = random_chart_point(rng, params)
        for q in fib.fiber_points(c, params, rng.uniform(-2, 2, 2)):
            back = fib.pi_project(q)
            worst = max(worst, abs(back.value.re - c.value.re), abs(back.value.im - c.value.im),
                        abs(q.norm_sq() - 1.0))
    return worst


def check_fiber_invariance(params, rng, n):
    worst = 0.0
    for _ in range(n):
        q = random_sphere_point(rng, params)
        g = GenQuaternion.embed(GenComplex(*ck_trig(params.kappa2, float(rng.uniform(-2, 2))), params.kappa2), params)
        a, b = fib.pi_project(q).value, fib.pi_project(g * q).value
        worst = max(worst, abs(a.re - b.re), abs(a.im - b.im))
    return worst


def check_connection(params, rng, n):
    worst = 0.0
    for _ in range(n):
        q = random_sphere_point(rng, params)
        lam = fib.connection_eval(fib.flow_tangent("i", q))
        worst = max(worst, abs(lam.re), abs(lam.im - 1.0))
        for t in rng.uniform(-1, 1, 3):
            lam = fib.connection_eval(fib.geodesic_velocity(q, t))
            worst = max(worst, abs(lam.im), abs(lam.re))
    return worst


def check_unit_base_speed(params, rng, n):
    worst = 0.0
    for _ in range(n):
        q = random_sphere_point(rng, params)
        v = fib.flow_tangent("j", q)
        dw = fib.projection_velocity(v)
        worst = max(worst, abs(fib.base_metric_eval(fib.pi_project(q), dw.value, params) - 1.0))
    return worst


def check_symplectic(params, rng, n):
    worst = 0.0
    for _ in range(n):
        X, Y = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        lhs = fib.real_inner(X, fib.j_apply(Y, params.kappa2), params)
        worst = max(worst, abs(lhs - params.kappa2 * fib.symplectic_eval(X, Y, params)))
    J = fib.j_matrix(params.kappa2)
    return max(worst, float(np.max(np.abs(J @ J + params.kappa2 * np.eye(4)))))


def check_boost_additivity(params, rng, n):
    worst = 0.0
    c_max = 0.9 / np.sqrt(-params.kappa2) if params.kappa2 < 0 else 2.0
    for _ in range(n):
        v1, v2 = rng.uniform(-c_max, c_max, 2)
        e = kin.Event(*rng.uniform(-1, 1, 2))
        t1, t2 = kin.rapidity(params, v1), kin.rapidity(params, v2)
        two = kin.boost(params, v2, kin.boost(params, v1, e))
        one = kin.boost_by_rapidity(params, t1 + t2, e)
        worst = max(worst, abs(two.t - one.t), abs(two.x - one.x))
    return worst


def check_classification(params, rng, n):
    sc = kin.family_constants(params).sign_pattern()
    return 0.0 if kin.classify_sc(sc) == kin.classify(params) else 1.0


CHECKS: Dict[str, tuple] = {
    "trig_pythagoras": (check_trig, 1e-12, 100),
    "generator_brackets": (check_generator_brackets, 0.0, 1),
    "one_param_vs_series": (check_one_param_series, 1e-9, 30),
    "so_form_preserved": (check_so_form, 1e-10, 30),
    "quaternion_associativity": (check_associativity, 1e-12, 300),
    "norm_composition": (check_norm_composition, 1e-10, 300),
    "matrix_homomorphism": (check_matrix_homomorphism, 1e-12, 300),
    "quaternion_brackets": (check_quaternion_brackets, 0.0, 1),
    "killing_form": (check_killing, 0.0, 1),
    "double_cover": (check_double_cover, 1e-9, 50),
    "fiber_projection": (check_fiber_projection, 1e-9, 100),
    "fiber_invariance": (check_fiber_invariance, 1e-9, 100),
    "connection_horizontality": (check_connection, 1e-9, 100),
    "unit_base_speed": (check_unit_base_speed, 1e-9, 100),
    "symplectic_compatibility": (check_symplectic, 1e-12, 300),
    "boost_additivity": (check_boost_additivity, 1e-10, 100),
    "classification": (check_classification, 0.0, 1),
}


def run_suite(params: CurvatureParams, seed: int = 0, tolerance: Optional[float] = None,
              only: Optional[List[str]] = None) -> List[CheckResult]:
    """Run every check for ``params``; ``tolerance`` overrides all per-check tolerances."""
    results = []
    for name, (fn, tol, n) in CHECKS.items():
        if only and name not in only:
            continue
        rng = np.random.default_rng(seed)
        try:
            residual = float(fn(params, rng, n))
        except DomainError:
            residual = float("inf")
        results.append(CheckResult(name, residual, tol if tolerance is None else tolerance, n))
    return results
