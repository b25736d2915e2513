"""Generalized complex numbers C_kappa and the kappa-trigonometric functions.

A generalized complex number is ``x + i y`` with ``i**2 = -kappa``.  The
plane is elliptic for ``kappa > 0``, parabolic (dual numbers) for
``kappa == 0`` and hyperbolic (split-complex) for ``kappa < 0``.

The degenerate branch is selected by an exact comparison of ``kappa``
against zero; no epsilon snapping is ever applied to kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from kinelab.errors import DomainError, ParameterError, ShapeError

Kappa = float
Real = Union[int, float]

# relative threshold on the quadratic norm used by is_zero_divisor
TAU_ZERO = 1e-12


@dataclass(frozen=True, slots=True)
class GenComplex:
    """A number ``re + i im`` of the plane C_kappa."""

    re: float
    im: float
    kappa: float

    @classmethod
    def real(cls, x: Real, kappa: Kappa) -> "GenComplex":
        return cls(float(x), 0.0, kappa)

    def conj(self) -> "GenComplex":
        return GenComplex(self.re, -self.im, self.kappa)

    def norm_sq(self) -> float:
        """``z * conj(z)``; negative or zero is possible when kappa <= 0."""
        return self.re * self.re + self.kappa * self.im * self.im

    def _check(self, other: "GenComplex") -> None:
        if self.kappa != other.kappa:
            raise ParameterError(
                f"mismatched kappa: {self.kappa!r} vs {other.kappa!r}")

    def __add__(self, other):
        if isinstance(other, GenComplex):
            self._check(other)
            return GenComplex(self.re + other.re, self.im + other.im, self.kappa)
        if isinstance(other, (int, float)):
            return GenComplex(self.re + other, self.im, self.kappa)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GenComplex":
        return GenComplex(-self.re, -self.im, self.kappa)

    def __sub__(self, other):
        if isinstance(other, (GenComplex, int, float)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GenComplex):
            return gc_mul(self, other)
        if isinstance(other, (int, float)):
            return GenComplex(self.re * other, self.im * other, self.kappa)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GenComplex":
        if is_zero_divisor(self):
            raise DomainError(f"{self} is a zero divisor and has no inverse")
        n = self.norm_sq()
        return GenComplex(self.re / n, -self.im / n, self.kappa)

    def __truediv__(self, other):
        if isinstance(other, GenComplex):
            self._check(other)
            return gc_mul(self, other.inverse())
        if isinstance(other, (int, float)):
            return GenComplex(self.re / other, self.im / other, self.kappa)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return self.inverse() * other
        return NotImplemented

    def close_to(self, other: "GenComplex", tol: float = 1e-10) -> bool:
        return (self.kappa == other.kappa
                and abs(self.re - other.re) <= tol
                and abs(self.im - other.im) <= tol)


def gc_mul(a: GenComplex, b: GenComplex) -> GenComplex:
    """Product ``(x1 + i y1)(x2 + i y2) = (x1 x2 - kappa y1 y2) + i (x1 y2 + x2 y1)``."""
    if a.kappa != b.kappa:
        raise ParameterError(f"mismatched kappa: {a.kappa!r} vs {b.kappa!r}")
    return GenComplex(a.re * b.re - a.kappa * a.im * b.im,
                      a.re * b.im + a.im * b.re,
                      a.kappa)


def is_zero_divisor(z: GenComplex, tol: float = TAU_ZERO) -> bool:
    """True when ``z`` has (numerically) vanishing norm, including ``z == 0``.

    The threshold scales with ``|re| + |im| sqrt|kappa|`` so the test does
    not depend on the magnitude of ``z``.
    """
    scale = abs(z.re) + abs(z.im) * math.sqrt(abs(z.kappa))
    return abs(z.norm_sq()) <= tol * scale * scale


def ck_trig(kappa: Kappa, phi: float) -> Tuple[float, float]:
    """Return ``(C_kappa(phi), S_kappa(phi))``.

    The pair always satisfies ``C**2 + kappa * S**2 == 1``.

    >>> ck_trig(0.0, 5.0)
    (1.0, 5.0)
    """
    if kappa > 0:
        r = math.sqrt(kappa)
        return math.cos(r * phi), math.sin(r * phi) / r
    if kappa == 0:
        return 1.0, float(phi)
    r = math.sqrt(-kappa)
    return math.cosh(r * phi), math.sinh(r * phi) / r


def ck_tan(kappa: Kappa, phi: float) -> float:
    c, s = ck_trig(kappa, phi)
    return s / c


def ck_tan_inv(kappa: Kappa, m: float) -> float:
    """Principal solution ``theta`` of ``S_kappa(theta) / C_kappa(theta) == m``."""
    if kappa > 0:
        r = math.sqrt(kappa)
        return math.atan(m * r) / r
    if kappa == 0:
        return float(m)
    r = math.sqrt(-kappa)
    if abs(m) * r >= 1.0:
        raise DomainError(
            f"rapidity undefined at or beyond light cone (|{m}| * sqrt({-kappa}) >= 1)")
    return math.atanh(m * r) / r


def gc_exp(z: GenComplex) -> GenComplex:
    """``exp(x + i y) = exp(x) (C_kappa(y) + i S_kappa(y))``."""
    c, s = ck_trig(z.kappa, z.im)
    scale = math.exp(z.re)
    return GenComplex(scale * c, scale * s, z.kappa)


def unit(theta: float, kappa: Kappa) -> GenComplex:
    """The unit number ``exp(i theta)`` of C_kappa."""
    c, s = ck_trig(kappa, theta)
    return GenComplex(c, s, kappa)


def gc_arg(z: GenComplex) -> float:
    """Angle ``theta`` with ``z = |z| exp(i theta)``.

    Defined for positive-norm ``z``; in the hyperbolic plane ``z`` must
    also lie on the branch of the unit hyperbola through 1 (``re > 0``).
    """
    n = z.norm_sq()
    if n <= 0 or is_zero_divisor(z):
        raise DomainError(f"argument undefined for {z} (norm {n})")
    k = z.kappa
    if k > 0:
        r = math.sqrt(k)
        return math.atan2(r * z.im, z.re) / r
    if z.re <= 0:
        raise DomainError(f"{z} is not on the unit-circle component through 1")
    if k == 0:
        return z.im / z.re
    r = math.sqrt(-k)
    return math.atanh(r * z.im / z.re) / r


def cr_residual(u_grid, v_grid, kappa: Kappa, spacing: float) -> Tuple[float, float]:
    """Cauchy-Riemann residuals of ``f = u + i v`` sampled on a uniform grid.

    Axis 0 of the grids is ``t`` and axis 1 is ``x`` (``z = t + i x``).
    Returns ``(max|u_t - v_x|, max|u_x + kappa v_t|)`` over interior
    points, using second-order central differences.
    """
    u = np.asarray(u_grid, dtype=float)
    v = np.asarray(v_grid, dtype=float)
    if u.ndim != 2 or u.shape != v.shape or min(u.shape) < 3:
        raise ShapeError(
            f"grids must share a 2-D shape of at least 3x3, got {u.shape} and {v.shape}")
    if not spacing > 0:
        raise ShapeError(f"spacing must be positive, got {spacing}")
    h2 = 2.0 * spacing
    u_t = (u[2:, 1:-1] - u[:-2, 1:-1]) / h2
    u_x = (u[1:-1, 2:] - u[1:-1, :-2]) / h2
    v_t = (v[2:, 1:-1] - v[:-2, 1:-1]) / h2
    v_x = (v[1:-1, 2:] - v[1:-1, :-2]) / h2
    r1 = float(np.max(np.abs(u_t - v_x)))
    r2 = float(np.max(np.abs(u_x + kappa * v_t)))
    return r1, r2
