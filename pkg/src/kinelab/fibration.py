"""The generalized Clifford fibration S^3_{kappa1,kappa2} -> Sigma_{kappa1,kappa2}.

Points of the total space are unit quaternions ``q = z1 + z2 j``.  The
fiber through ``q`` is the orbit ``exp(i theta) q`` and the projection
sends ``q`` to ``w = z2 / z1`` (w-chart) or ``omega = z1 / z2``
(omega-chart, used when ``z1`` is a zero divisor).

Real coordinates ``X = (x, y, u, v)`` are those of
``z1 = x + i y`` and ``z2 = u + i v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple

import numpy as np

from kinelab.errors import DomainError, IntegrationError, ParameterError
from kinelab.gctrig import GenComplex, ck_trig, gc_arg, is_zero_divisor, unit
from kinelab.projective import ChartPoint, null_radicand
from kinelab.quaternions import CurvatureParams, GenQuaternion, basis, q_mul

TAU_UNIT = 1e-9
LIFT_TOL = 1e-6
DRIFT_TOL = 1e-4

Flow = Literal["i", "j", "k"]


def check_on_sphere(q: GenQuaternion, tol: float = TAU_UNIT) -> GenQuaternion:
    r = q.norm_sq() - 1.0
    if abs(r) >= tol:
        raise DomainError(f"point is off the unit sphere (norm_sq - 1 = {r:.3e})")
    return q


@dataclass(frozen=True, slots=True)
class TangentVector:
    base: GenQuaternion
    dir: GenQuaternion

    def __add__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.base, self.dir + other.dir)

    def scaled(self, a: float) -> "TangentVector":
        return TangentVector(self.base, self.dir * a)


def flow_tangent(gen: Flow, q: GenQuaternion) -> TangentVector:
    """Velocity of ``exp(t e) q`` at ``t = 0`` for ``e`` in ``{i, j, k}``."""
    _, i, j, k = basis(q.params)
    try:
        e = {"i": i, "j": j, "k": k}[gen]
    except KeyError:
        raise ParameterError(f"unknown flow {gen!r}") from None
    return TangentVector(q, q_mul(e, q))


def pi_project(q: GenQuaternion) -> ChartPoint:
    z1, z2 = q.z1, q.z2
    if not is_zero_divisor(z1):
        return ChartPoint(z2 / z1, "w")
    if not is_zero_divisor(z2):
        return ChartPoint(z1 / z2, "omega")
    raise AssertionError(f"both components of {q} are zero divisors; not a sphere point")


def _radicand(c: ChartPoint, params: CurvatureParams) -> float:
    if c.value.kappa != params.kappa2:
        raise ParameterError("chart value must live in C_{kappa2}")
    r = null_radicand(c, params.kappa1)
    if r <= 0:
        raise DomainError(f"null or non-normalizable line at {c} (radicand {r})")
    return r


def section(c: ChartPoint, params: CurvatureParams) -> GenQuaternion:
    """Local section: the point of the fiber over ``c`` with fiber coordinate 1.

    ``(1 + w j) / sqrt(1 + kappa1 |w|^2)`` in the w-chart and
    ``(omega + j) / sqrt(|omega|^2 + kappa1)`` in the omega-chart.
    """
    r = math.sqrt(_radicand(c, params))
    one = GenComplex.real(1.0, params.kappa2)
    if c.chart == "w":
        return GenQuaternion.from_complex(one, c.value, params) / r
    return GenQuaternion.from_complex(c.value, one, params) / r


def trivialization(c: ChartPoint, g: GenComplex, params: CurvatureParams) -> GenQuaternion:
    """Product-structure map ``(c, g) -> g * section(c)`` for unit ``g`` in C_{kappa2}."""
    return q_mul(GenQuaternion.embed(g, params), section(c, params))


def trivialize(q: GenQuaternion) -> Tuple[ChartPoint, GenComplex]:
    """Inverse of :func:`trivialization`."""
    c = pi_project(q)
    r = math.sqrt(_radicand(c, q.params))
    g = q.z1 * r if c.chart == "w" else q.z2 * r
    return c, g


def gluing_map(omega: GenComplex, g: GenComplex) -> Tuple[ChartPoint, GenComplex]:
    """Omega-chart trivialization data re-expressed in the w-chart:
    ``(omega, g) -> (1/omega, g omega/|omega|)``."""
    n = omega.norm_sq()
    if n <= 0 or is_zero_divisor(omega):
        raise DomainError(f"gluing undefined at omega = {omega} (norm {n})")
    return ChartPoint(1.0 / omega, "w"), g * omega / math.sqrt(n)


def fiber_points(c: ChartPoint, params: CurvatureParams, thetas: Sequence[float]) -> List[GenQuaternion]:
    """``exp(i theta) * section(c)`` for each ``theta``."""
    s = section(c, params)
    return [q_mul(GenQuaternion.embed(unit(t, params.kappa2), params), s) for t in thetas]


def hermitian_inner(a: GenQuaternion, b: GenQuaternion) -> GenComplex:
    """``a1 conj(b1) + kappa1 a2 conj(b2)`` on C_{kappa2}^2."""
    k1 = a.params.kappa1
    return a.z1 * b.z1.conj() + k1 * (a.z2 * b.z2.conj())


def connection_eval(t: TangentVector) -> GenComplex:
    """Connection form ``conj(z1) dz1 + kappa1 conj(z2) dz2`` on a tangent vector."""
    q, d = t.base, t.dir
    return q.z1.conj() * d.z1 + q.params.kappa1 * (q.z2.conj() * d.z2)


def curvature_pairing(a: TangentVector, b: TangentVector) -> GenComplex:
    """Hermitian pairing ``<a, b>`` of two horizontal vectors.

    This is the normalization in which the pair ``(jq, kq)`` evaluates to
    ``-kappa1 i``.  The exterior derivative of :func:`connection_eval`
    evaluates to ``2 kappa1 i`` on the same pair, which is what governs
    :func:`holonomy_loop`.
    """
    return hermitian_inner(a.dir, b.dir)


def horizontal_project(t: TangentVector) -> TangentVector:
    """Remove the fiber component ``b (i q)``, ``b = Im connection_eval(t)``."""
    b = connection_eval(t).im
    _, i, _, _ = basis(t.base.params)
    return TangentVector(t.base, t.dir - q_mul(i, t.base) * b)


def horizontal_geodesic(q: GenQuaternion, t: float) -> GenQuaternion:
    """``(C_{kappa1}(t) + S_{kappa1}(t) j) q``."""
    c, s = ck_trig(q.params.kappa1, t)
    return q_mul(GenQuaternion(c, 0.0, s, 0.0, q.params), q)


def geodesic_velocity(q: GenQuaternion, t: float) -> TangentVector:
    x = horizontal_geodesic(q, t)
    return flow_tangent("j", x)


def projection_velocity(t: TangentVector) -> ChartPoint:
    """Differential of :func:`pi_project` applied to ``t``."""
    q, d = t.base, t.dir
    c = pi_project(q)
    z1, z2 = q.z1, q.z2
    if c.chart == "w":
        return ChartPoint((d.z2 * z1 - z2 * d.z1) / (z1 * z1), "w")
    return ChartPoint((d.z1 * z2 - z1 * d.z2) / (z2 * z2), "omega")


def _chart_gap(a: ChartPoint, b: ChartPoint) -> float:
    if a.chart != b.chart:
        return math.inf
    return max(abs(a.value.re - b.value.re), abs(a.value.im - b.value.im))


def _lift_rhs(q: GenQuaternion, dw: GenComplex, chart: str) -> GenQuaternion:
    # horizontal vector c * (j q) projects to c / z1^2 (w-chart) or -c / z2^2 (omega-chart)
    if chart == "w":
        c = dw * (q.z1 * q.z1)
    else:
        c = -(dw * (q.z2 * q.z2))
    jq = GenQuaternion(0.0, 0.0, 1.0, 0.0, q.params)
    return q_mul(GenQuaternion.embed(c, q.params), q_mul(jq, q))


def _renormalize(q: GenQuaternion) -> GenQuaternion:
    n = q.norm_sq()
    if n <= 0:
        raise IntegrationError(f"lift left the sphere (norm_sq = {n})")
    return q / math.sqrt(n)


def horizontal_lift(path: Sequence[ChartPoint], q0: GenQuaternion, substeps: int = 1) -> List[GenQuaternion]:
    """Horizontal lift of a sampled base path starting at ``q0``.

    The path is followed as the polygon through its samples (one chart
    throughout).  Each segment is integrated with classical RK4 on the
    ambient coordinates, with renormalization to the sphere after every
    step.
    """
    if not path:
        return []
    params = q0.params
    check_on_sphere(q0, 1e-8)
    chart = path[0].chart
    if any(c.chart != chart for c in path):
        raise ParameterError("all path samples must use the same chart")
    for c in path:
        try:
            _radicand(c, params)
        except DomainError as exc:
            raise DomainError(f"lift undefined: {exc}") from None
    if _chart_gap(pi_project(q0), path[0]) > LIFT_TOL:
        raise DomainError("q0 does not project to the first path sample")

    h = 1.0 / substeps
    q = q0
    out = [q0]
    for a, b in zip(path[:-1], path[1:]):
        dw = b.value - a.value
        for _ in range(substeps):
            k1 = _lift_rhs(q, dw, chart)
            k2 = _lift_rhs(q + k1 * (0.5 * h), dw, chart)
            k3 = _lift_rhs(q + k2 * (0.5 * h), dw, chart)
            k4 = _lift_rhs(q + k3 * h, dw, chart)
            q = _renormalize(q + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
        drift = _chart_gap(pi_project(q), b)
        if drift > DRIFT_TOL:
            raise IntegrationError(f"projection drift {drift:.3e} exceeds {DRIFT_TOL}")
        out.append(q)
    return out


def fiber_angle(q1: GenQuaternion, q0: GenQuaternion) -> float:
    """Angle ``theta`` with ``q1 = exp(i theta) q0``.

    ``(C, S)`` are found by least squares on the plane spanned by ``X0``
    and ``J X0``; the angle is then read off per signature of kappa2.
    """
    k2 = q0.params.kappa2
    x0 = q0.as_array()
    A = np.column_stack([x0, j_apply(x0, k2)])
    (c, s), *_ = np.linalg.lstsq(A, q1.as_array(), rcond=None)
    resid = float(np.max(np.abs(A @ np.array([c, s]) - q1.as_array())))
    if resid > DRIFT_TOL:
        raise IntegrationError(f"endpoint is not on the fiber of q0 (residual {resid:.3e})")
    return gc_arg(GenComplex(float(c), float(s), k2))


def holonomy_loop(loop: Sequence[ChartPoint], q0: GenQuaternion, params: CurvatureParams,
                  substeps: int = 1) -> float:
    """Fiber angle acquired by horizontally lifting a closed base loop from ``q0``."""
    if q0.params != params:
        raise ParameterError(f"q0 carries {q0.params}, expected {params}")
    if len(loop) < 2:
        return 0.0
    if _chart_gap(loop[0], loop[-1]) > 1e-12:
        raise ParameterError("loop is not closed (first sample != last sample)")
    lift = horizontal_lift(loop, q0, substeps)
    return fiber_angle(lift[-1], q0)


def square_loop(center: GenComplex, side: float, per_side: int = 250, chart: str = "w") -> List[ChartPoint]:
    """Counter-clockwise axis-aligned square of the given side, closed."""
    h = side / 2.0
    corners = [(-h, -h), (h, -h), (h, h), (-h, h), (-h, -h)]
    pts = []
    for (a0, b0), (a1, b1) in zip(corners[:-1], corners[1:]):
        for n in range(per_side):
            s = n / per_side
            pts.append(GenComplex(center.re + a0 + (a1 - a0) * s,
                                  center.im + b0 + (b1 - b0) * s, center.kappa))
    pts.append(GenComplex(center.re - h, center.im - h, center.kappa))
    return [ChartPoint(z, chart) for z in pts]


def base_metric_eval(c: ChartPoint, dw: GenComplex, params: CurvatureParams) -> float:
    """``|dw|^2 / (1 + kappa1 |w|^2)^2``; omega-chart: ``|d omega|^2 / (|omega|^2 + kappa1)^2``."""
    d = null_radicand(c, params.kappa1)
    if abs(d) <= 1e-12:
        raise DomainError(f"base metric undefined on the null locus at {c}")
    return dw.norm_sq() / (d * d)


def real_form(params: CurvatureParams) -> np.ndarray:
    k1, k2 = params
    return np.diag([1.0, k2, k1, k1 * k2])


def j_apply(X, kappa2: float) -> np.ndarray:
    """``(x, y, u, v) -> (-kappa2 y, x, -kappa2 v, u)``: multiplication by i."""
    x, y, u, v = np.asarray(X, dtype=float)
    return np.array([-kappa2 * y, x, -kappa2 * v, u]) + 0.0


def j_matrix(kappa2: float) -> np.ndarray:
    return np.array([[0.0, -kappa2, 0.0, 0.0],
                     [1.0, 0.0, 0.0, 0.0],
                     [0.0, 0.0, 0.0, -kappa2],
                     [0.0, 0.0, 1.0, 0.0]]) + 0.0


def symplectic_matrix(params: CurvatureParams) -> np.ndarray:
    k1 = params.kappa1
    return np.array([[0.0, -1.0, 0.0, 0.0],
                     [1.0, 0.0, 0.0, 0.0],
                     [0.0, 0.0, 0.0, -k1],
                     [0.0, 0.0, k1, 0.0]]) + 0.0


def real_inner(X1, X2, params: CurvatureParams) -> float:
    return float(np.asarray(X1, dtype=float) @ real_form(params) @ np.asarray(X2, dtype=float))


def symplectic_eval(X1, X2, params: CurvatureParams) -> float:
    return float(np.asarray(X1, dtype=float) @ symplectic_matrix(params) @ np.asarray(X2, dtype=float))


def fiber_orbit(q: GenQuaternion, thetas: Sequence[float]) -> List[np.ndarray]:
    """``X C_{kappa2}(theta) + J X S_{kappa2}(theta)`` in real coordinates."""
    k2 = q.params.kappa2
    X = q.as_array()
    JX = j_apply(X, k2)
    out = []
    for t in thetas:
        c, s = ck_trig(k2, t)
        out.append(X * c + JX * s)
    return out
