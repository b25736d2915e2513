"""The Riemann sphere of C_kappa ratios, its two charts, and the sphere map.

A :class:`ProjectivePoint` ``[A/B]`` is identified with the w-chart value
``w = A/B`` whenever ``B`` is invertible; otherwise it lives only in the
omega-chart with ``omega = B/A``.  Read as a complex line of C_kappa^2,
``[A/B]`` is the line through ``(z1, z2) = (B, A)``, so ``w = z2 / z1``
is the convention used by the fibration module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Tuple

from kinelab.errors import DomainError, ParameterError
from kinelab.gctrig import GenComplex, Kappa, is_zero_divisor

EQ_TOL = 1e-10
NULL_TOL = 1e-9

Chart = Literal["w", "omega"]


@dataclass(frozen=True, slots=True)
class ProjectivePoint:
    """Canonical representative of the class ``[A/B]``."""

    A: GenComplex
    B: GenComplex

    @property
    def kappa(self) -> float:
        return self.A.kappa

    @property
    def is_infinite(self) -> bool:
        """True when the w-chart value does not exist (``B`` is a zero divisor)."""
        return is_zero_divisor(self.B)


@dataclass(frozen=True, slots=True)
class ChartPoint:
    value: GenComplex
    chart: Chart = "w"

    def __post_init__(self):
        if self.chart not in ("w", "omega"):
            raise ParameterError(f"unknown chart {self.chart!r}")


def proj_canonicalize(A: GenComplex, B: GenComplex) -> ProjectivePoint:
    """Scale ``(A, B)`` so that ``B == 1``, or ``A == 1`` when ``B`` is a zero divisor."""
    if A.kappa != B.kappa:
        raise ParameterError(f"mismatched kappa: {A.kappa!r} vs {B.kappa!r}")
    one = GenComplex.real(1.0, A.kappa)
    if not is_zero_divisor(B):
        return ProjectivePoint(A / B, one)
    if not is_zero_divisor(A):
        return ProjectivePoint(one, B / A)
    raise DomainError(f"undefined projective point [{A}/{B}]: both entries are zero divisors")


def proj_eq(p: ProjectivePoint, q: ProjectivePoint, tol: float = EQ_TOL) -> bool:
    p = proj_canonicalize(p.A, p.B)
    q = proj_canonicalize(q.A, q.B)
    return p.A.close_to(q.A, tol) and p.B.close_to(q.B, tol)


def to_chart(p: ProjectivePoint) -> ChartPoint:
    p = proj_canonicalize(p.A, p.B)
    if not is_zero_divisor(p.B):
        return ChartPoint(p.A, "w")
    return ChartPoint(p.B, "omega")


def from_chart(c: ChartPoint) -> ProjectivePoint:
    one = GenComplex.real(1.0, c.value.kappa)
    if c.chart == "w":
        return ProjectivePoint(c.value, one)
    return proj_canonicalize(one, c.value)


def null_radicand(c: ChartPoint, kappa1: Kappa) -> float:
    """Hermitian norm of the chart's spanning vector of the line.

    ``1 + kappa1 |w|^2`` in the w-chart (vector ``(1, w)``) and
    ``|omega|^2 + kappa1`` in the omega-chart (vector ``(omega, 1)``).
    """
    n = c.value.norm_sq()
    if c.chart == "w":
        return 1.0 + kappa1 * n
    return n + kappa1


def is_null_line(p: ProjectivePoint, kappa1: Kappa) -> bool:
    """True when ``|z1|^2 + kappa1 |z2|^2`` vanishes on the whole line.

    For ``kappa1 == 0`` these are exactly the infinities of the w-chart;
    for ``kappa1 < 0`` the circle ``|w|^2 = -1/kappa1``.  With
    ``kappa1 > 0`` null lines appear only in the split plane
    (``kappa2 < 0``), where ``|w|^2`` can be negative.
    """
    c = to_chart(p)
    radicand = null_radicand(c, kappa1)
    scale = 1.0 + abs(kappa1) * (abs(c.value.re) + abs(c.value.im) * abs(c.value.kappa) ** 0.5) ** 2
    return abs(radicand) <= NULL_TOL * scale


def chart_transition(c: ChartPoint) -> ChartPoint:
    """Express the point in the other chart: the value becomes its reciprocal."""
    z = c.value
    if is_zero_divisor(z) or z.norm_sq() <= 0:
        raise DomainError(f"transition undefined at {z} (zero divisor or non-positive norm)")
    other: Chart = "omega" if c.chart == "w" else "w"
    return ChartPoint(1.0 / z, other)


def chart_to_sphere(w: GenComplex, kappa1: Kappa) -> Tuple[float, float, float]:
    """Stereographic image ``(Re 2w/D, Im 2w/D, (-1 + kappa1|w|^2)/D)``, ``D = 1 + kappa1|w|^2``.

    The triple ``(a, b, c)`` satisfies ``kappa1 a^2 + kappa1 kappa2 b^2 + c^2 = 1``,
    i.e. ``(c, a, b)`` is a unit vector for the form
    ``dy^2 + kappa1 dt^2 + kappa1 kappa2 dx^2``.
    """
    n = w.norm_sq()
    d = 1.0 + kappa1 * n
    if abs(d) <= NULL_TOL * (1.0 + abs(kappa1 * n)):
        raise DomainError(f"point on removed null locus: 1 + kappa1 |w|^2 = {d}")
    return 2.0 * w.re / d, 2.0 * w.im / d, (-1.0 + kappa1 * n) / d
