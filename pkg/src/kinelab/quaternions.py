"""Generalized quaternions H_{kappa1,kappa2}.

``q = x + i y + j u + k v`` with ``i^2 = -kappa2``, ``j^2 = -kappa1``,
``k^2 = -kappa1 kappa2`` and ``ij = k``, ``jk = kappa1 i``, ``ki = kappa2 j``.
Writing ``q = z1 + z2 j`` with ``z1 = x + i y`` and ``z2 = u + i v`` in
C_{kappa2} identifies H with C_{kappa2}^2 and with the 2x2 matrices
``((z1, z2), (-kappa1 conj(z2), conj(z1)))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Tuple

import numpy as np

from kinelab.errors import DomainError, ParameterError, ShapeError
from kinelab.gctrig import GenComplex, Kappa, ck_trig

UNIT_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class CurvatureParams:
    """The pair ``(kappa1, kappa2)``.

    ``kappa1 = +-1/tau^2`` is the spacetime curvature and
    ``kappa2 = -1/c^2`` encodes the speed of light.
    """

    kappa1: Kappa
    kappa2: Kappa

    def __iter__(self):
        return iter((self.kappa1, self.kappa2))


@dataclass(frozen=True, slots=True)
class GenQuaternion:
    x: float
    y: float
    u: float
    v: float
    params: CurvatureParams

    @classmethod
    def from_complex(cls, z1: GenComplex, z2: GenComplex, params: CurvatureParams) -> "GenQuaternion":
        """Build ``z1 + z2 j``."""
        if z1.kappa != params.kappa2 or z2.kappa != params.kappa2:
            raise ParameterError("complex components must live in C_{kappa2}")
        return cls(z1.re, z1.im, z2.re, z2.im, params)

    @classmethod
    def from_array(cls, arr, params: CurvatureParams) -> "GenQuaternion":
        x, y, u, v = (float(a) for a in arr)
        return cls(x, y, u, v, params)

    @classmethod
    def scalar(cls, a: float, params: CurvatureParams) -> "GenQuaternion":
        return cls(float(a), 0.0, 0.0, 0.0, params)

    @classmethod
    def embed(cls, z: GenComplex, params: CurvatureParams) -> "GenQuaternion":
        """The (1, i)-plane copy of ``z``."""
        return cls(z.re, z.im, 0.0, 0.0, params)

    @property
    def z1(self) -> GenComplex:
        return GenComplex(self.x, self.y, self.params.kappa2)

    @property
    def z2(self) -> GenComplex:
        return GenComplex(self.u, self.v, self.params.kappa2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.u, self.v])

    def conj(self) -> "GenQuaternion":
        return GenQuaternion(self.x, -self.y, -self.u, -self.v, self.params)

    def pure(self) -> "GenQuaternion":
        return GenQuaternion(0.0, self.y, self.u, self.v, self.params)

    def norm_sq(self) -> float:
        k1, k2 = self.params
        return (self.x * self.x + k2 * self.y * self.y + k1 * self.u * self.u
                + k1 * k2 * self.v * self.v)

    def _coerce(self, other):
        if isinstance(other, GenQuaternion):
            if other.params != self.params:
                raise ParameterError(f"mismatched params: {self.params} vs {other.params}")
            return other
        if isinstance(other, (int, float)):
            return GenQuaternion.scalar(other, self.params)
        if isinstance(other, GenComplex):
            if other.kappa != self.params.kappa2:
                raise ParameterError("complex scalar must live in C_{kappa2}")
            return GenQuaternion.embed(other, self.params)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GenQuaternion(self.x + o.x, self.y + o.y, self.u + o.u, self.v + o.v, self.params)

    __radd__ = __add__

    def __neg__(self):
        return GenQuaternion(-self.x, -self.y, -self.u, -self.v, self.params)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return GenQuaternion(self.x * other, self.y * other, self.u * other,
                                 self.v * other, self.params)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return q_mul(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return q_mul(o, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return NotImplemented

    def close_to(self, other: "GenQuaternion", tol: float = 1e-10) -> bool:
        return (self.params == other.params
                and float(np.max(np.abs(self.as_array() - other.as_array()))) <= tol)


def basis(params: CurvatureParams) -> Tuple[GenQuaternion, GenQuaternion, GenQuaternion, GenQuaternion]:
    """``(1, i, j, k)``."""
    return (GenQuaternion(1.0, 0.0, 0.0, 0.0, params),
            GenQuaternion(0.0, 1.0, 0.0, 0.0, params),
            GenQuaternion(0.0, 0.0, 1.0, 0.0, params),
            GenQuaternion(0.0, 0.0, 0.0, 1.0, params))


def q_mul(a: GenQuaternion, b: GenQuaternion) -> GenQuaternion:
    """Bilinear extension of the product table."""
    if a.params != b.params:
        raise ParameterError(f"mismatched params: {a.params} vs {b.params}")
    k1, k2 = a.params
    x1, y1, u1, v1 = a.x, a.y, a.u, a.v
    x2, y2, u2, v2 = b.x, b.y, b.u, b.v
    return GenQuaternion(
        x1 * x2 - k2 * y1 * y2 - k1 * u1 * u2 - k1 * k2 * v1 * v2,
        x1 * y2 + y1 * x2 + k1 * (u1 * v2 - v1 * u2),
        x1 * u2 + u1 * x2 + k2 * (v1 * y2 - y1 * v2),
        x1 * v2 + v1 * x2 + y1 * u2 - u1 * y2,
        a.params,
    )


def bracket(a: GenQuaternion, b: GenQuaternion) -> GenQuaternion:
    return q_mul(a, b) - q_mul(b, a)


@dataclass(frozen=True, slots=True)
class QuatMatrix:
    """A 2x2 matrix over C_{kappa2}, rows ``(a, b)`` and ``(c, d)``."""

    a: GenComplex
    b: GenComplex
    c: GenComplex
    d: GenComplex

    def __matmul__(self, o: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self) -> GenComplex:
        return self.a * self.d - self.b * self.c

    def entries(self) -> Tuple[GenComplex, GenComplex, GenComplex, GenComplex]:
        return self.a, self.b, self.c, self.d

    def max_abs_diff(self, o: "QuatMatrix") -> float:
        return max(max(abs(p.re - q.re), abs(p.im - q.im))
                   for p, q in zip(self.entries(), o.entries()))


def q_to_matrix(q: GenQuaternion) -> QuatMatrix:
    z1, z2 = q.z1, q.z2
    return QuatMatrix(z1, z2, -q.params.kappa1 * z2.conj(), z1.conj())


def matrix_to_q(m: QuatMatrix, params: CurvatureParams, tol: float = 1e-12) -> GenQuaternion:
    """Inverse of :func:`q_to_matrix`; rejects matrices outside the constrained shape."""
    expect_c = -params.kappa1 * m.b.conj()
    expect_d = m.a.conj()
    scale = 1.0 + max(abs(e.re) + abs(e.im) for e in m.entries())
    if not (m.c.close_to(expect_c, tol * scale) and m.d.close_to(expect_d, tol * scale)):
        raise ShapeError("matrix is not of the form ((z1, z2), (-kappa1 conj(z2), conj(z1)))")
    return GenQuaternion.from_complex(m.a, m.b, params)


def q_exp_pure(p: GenQuaternion, t: float = 1.0) -> GenQuaternion:
    """``exp(t p) = C_N(t) + S_N(t) p`` for a pure quaternion with ``p^2 = -N``."""
    if p.x != 0.0:
        raise DomainError(f"q_exp_pure needs a pure quaternion, scalar part is {p.x}")
    c, s = ck_trig(p.norm_sq(), t)
    return GenQuaternion(c, s * p.y, s * p.u, s * p.v, p.params)


def q_inner(a: GenQuaternion, b: GenQuaternion) -> float:
    """Real inner product ``(a conj(b) + b conj(a)) / 2``."""
    if a.params != b.params:
        raise ParameterError(f"mismatched params: {a.params} vs {b.params}")
    k1, k2 = a.params
    return a.x * b.x + k2 * a.y * b.y + k1 * a.u * b.u + k1 * k2 * a.v * b.v


def _require_unit(a: GenQuaternion) -> None:
    if abs(a.norm_sq() - 1.0) >= UNIT_TOL:
        raise DomainError(f"expected a unit quaternion, norm_sq = {a.norm_sq()!r}")


def adjoint_rotate(a: GenQuaternion, p: GenQuaternion) -> GenQuaternion:
    """``a p conj(a)`` for unit ``a`` and pure ``p``."""
    _require_unit(a)
    if p.x != 0.0:
        raise DomainError("adjoint_rotate acts on pure quaternions")
    return q_mul(q_mul(a, p), a.conj())


def adjoint_matrix(a: GenQuaternion) -> np.ndarray:
    """Matrix of ``p -> a p conj(a)`` on the ordered pure basis ``(i, j, k)``."""
    _require_unit(a)
    _, i, j, k = basis(a.params)
    cols = []
    for e in (i, j, k):
        r = q_mul(q_mul(a, e), a.conj())
        cols.append([r.y, r.u, r.v])
    return np.array(cols).T


def kinematical_basis(params: CurvatureParams) -> Tuple[GenQuaternion, GenQuaternion, GenQuaternion]:
    """Pure quaternions ``(K, H, P)`` whose brackets are exactly
    ``[K,H] = P``, ``[K,P] = -kappa2 H``, ``[H,P] = kappa1 K``.

    These are the half units ``(i/2, j/2, k/2)``: since ``[i, j] = 2k``,
    the doubled units would carry an extra factor 4 in every bracket.
    """
    _, i, j, k = basis(params)
    return i * 0.5, j * 0.5, k * 0.5


def killing_form(params: CurvatureParams) -> np.ndarray:
    """Killing form on the basis ``(K, H, P)``: ``-2 diag(kappa2, kappa1, kappa1 kappa2)``."""
    k1, k2 = params
    return -2.0 * np.diag([k2, k1, k1 * k2]) + 0.0


def homogeneous_metric(params: CurvatureParams, quotient: Literal["by-K", "by-H", "by-P"]) -> np.ndarray:
    """Rescaled metric on the quotient by the one-parameter subgroup of K, H or P."""
    k1, k2 = params
    table = {"by-K": (1.0, k2), "by-H": (1.0, k1), "by-P": (k2, k1)}
    try:
        return np.diag(table[quotient]) + 0.0
    except KeyError:
        raise ParameterError(f"unknown quotient {quotient!r}; expected one of {sorted(table)}") from None


def unit_from_pure(y: float, u: float, v: float, params: CurvatureParams) -> GenQuaternion:
    """``exp(i y + j u + k v)``; a convenient way to reach unit quaternions."""
    return q_exp_pure(GenQuaternion(0.0, y, u, v, params), 1.0)

