"""Kinematical Lie algebras: structure constants, classification, contractions,
symmetries, the so_{kappa1,kappa2}(3) matrix model and boosts.

Brackets are parameterized as ``[K,H] = p P``, ``[K,P] = h H``,
``[H,P] = k K``.  The two-parameter family has ``(p, h, k) = (1, -kappa2, kappa1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Literal, NamedTuple, Tuple

import numpy as np

from kinelab.errors import ParameterError
from kinelab.gctrig import GenComplex, ck_tan_inv, ck_trig, unit
from kinelab.quaternions import CurvatureParams

GROUP_NAMES = ("dS", "adS", "M", "M+", "M'", "C", "N+", "N-", "G", "SdS", "St", "El", "Eu", "H")
KINEMATICAL = GROUP_NAMES[:11]
UNRECOGNIZED = "unrecognized"

# normalized (p, h, k) for the 11 kinematical and 3 non-kinematical algebras
GROUP_TABLE: Dict[str, Tuple[int, int, int]] = {
    "dS": (1, 1, -1),
    "adS": (1, 1, 1),
    "M": (1, 1, 0),
    "M+": (0, 1, -1),
    "M'": (0, 1, 1),
    "C": (0, 1, 0),
    "N+": (1, 0, -1),
    "N-": (1, 0, 1),
    "G": (1, 0, 0),
    "SdS": (0, 0, -1),
    "St": (0, 0, 0),
    "El": (1, -1, 1),
    "Eu": (1, -1, 0),
    "H": (1, -1, -1),
}

PRESETS: Dict[str, CurvatureParams] = {
    "dS": CurvatureParams(-1.0, -1.0),
    "adS": CurvatureParams(1.0, -1.0),
    "M": CurvatureParams(0.0, -1.0),
    "N+": CurvatureParams(-1.0, 0.0),
    "N-": CurvatureParams(1.0, 0.0),
    "G": CurvatureParams(0.0, 0.0),
    "H": CurvatureParams(-1.0, 1.0),
    "Eu": CurvatureParams(0.0, 1.0),
    "El": CurvatureParams(1.0, 1.0),
}

Contraction = Literal["speed-space", "speed-time", "space-time"]
Symmetry = Literal["S_P", "S_H", "S_K"]
Generator = Literal["H", "P", "K"]


def _sign(a: float) -> int:
    return (a > 0) - (a < 0)


@dataclass(frozen=True, slots=True)
class StructureConstants:
    p: float
    h: float
    k: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.p, self.h, self.k

    @property
    def normalized(self) -> bool:
        return all(c in (-1, 0, 1) for c in self.as_tuple())

    def sign_pattern(self) -> "StructureConstants":
        """Normalize by positive rescalings of the generators, keeping only signs."""
        return StructureConstants(*(_sign(c) for c in self.as_tuple()))


def family_constants(params: CurvatureParams) -> StructureConstants:
    """``(p, h, k) = (1, -kappa2, kappa1)``."""
    return StructureConstants(1.0, -params.kappa2 + 0.0, params.kappa1 + 0.0)


def rescale_sc(sc: StructureConstants, a: float, b: float, c: float) -> StructureConstants:
    """Constants after substituting ``K -> aK``, ``H -> bH``, ``P -> cP``."""
    return StructureConstants(sc.p * a * b / c, sc.h * a * c / b, sc.k * b * c / a)


def canonical_sign(t: Tuple[int, int, int]) -> Tuple[int, int, int]:
    """Representative of ``{t, -t}``: the first non-zero entry is made positive.

    Flipping the sign of one generator flips all three constants at once,
    so ``{t, -t}`` is the full orbit of sign rescalings.
    """
    for c in t:
        if c:
            return t if c > 0 else tuple(-x for x in t)
    return t


_LOOKUP = {canonical_sign(v): name for name, v in GROUP_TABLE.items()}


def classify_sc(sc: StructureConstants) -> str:
    """Name of the algebra with the given normalized constants."""
    if not sc.normalized:
        raise ParameterError(f"structure constants {sc.as_tuple()} are not normalized to {{-1, 0, 1}}")
    key = canonical_sign(tuple(int(c) for c in sc.as_tuple()))
    return _LOOKUP.get(key, UNRECOGNIZED)


def classify(params: CurvatureParams) -> str:
    """Sign-grid lookup over the nine ``(kappa1, kappa2)`` patterns."""
    row = {-1: ("dS", "M", "adS"), 0: ("N+", "G", "N-"), 1: ("H", "Eu", "El")}
    return row[_sign(params.kappa2)][_sign(params.kappa1) + 1]


def contract_sc(sc: StructureConstants, kind: Contraction) -> StructureConstants:
    """Exact epsilon -> 0 limit of the rescaled brackets."""
    if kind == "speed-space":
        return StructureConstants(sc.p, 0, sc.k)
    if kind == "speed-time":
        return StructureConstants(0, sc.h, sc.k)
    if kind == "space-time":
        return StructureConstants(sc.p, sc.h, 0)
    raise ParameterError(f"unknown contraction {kind!r}")


def symmetry_sc(sc: StructureConstants, which: Symmetry) -> StructureConstants:
    """Relabel two generators: S_P swaps K,H; S_H swaps K,P; S_K swaps H,P."""
    p, h, k = sc.as_tuple()
    if which == "S_P":
        return StructureConstants(-p, k, h)
    if which == "S_H":
        return StructureConstants(-k, -h, -p)
    if which == "S_K":
        return StructureConstants(h, p, -k)
    raise ParameterError(f"unknown symmetry {which!r}")


def generators(params: CurvatureParams) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(H, P, K)`` acting on ``(y, t, x)``."""
    k1, k2 = params
    H = np.array([[0.0, -k1, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    P = np.array([[0.0, 0.0, -k1 * k2], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    K = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -k2], [0.0, 1.0, 0.0]])
    return H + 0.0, P + 0.0, K + 0.0


def ambient_form(params: CurvatureParams) -> np.ndarray:
    """``diag(1, kappa1, kappa1 kappa2)`` on ``(y, t, x)``."""
    return np.diag([1.0, params.kappa1, params.kappa1 * params.kappa2])


def one_param(gen: Generator, param: float, params: CurvatureParams) -> np.ndarray:
    """Closed form of ``exp(param * gen)``."""
    k1, k2 = params
    m = np.eye(3)
    if gen == "H":
        c, s = ck_trig(k1, param)
        m[0, 0], m[0, 1], m[1, 0], m[1, 1] = c, -k1 * s, s, c
    elif gen == "P":
        c, s = ck_trig(k1 * k2, param)
        m[0, 0], m[0, 2], m[2, 0], m[2, 2] = c, -k1 * k2 * s, s, c
    elif gen == "K":
        c, s = ck_trig(k2, param)
        m[1, 1], m[1, 2], m[2, 1], m[2, 2] = c, -k2 * s, s, c
    else:
        raise ParameterError(f"unknown generator {gen!r}")
    return m + 0.0


class Event(NamedTuple):
    t: float
    x: float


def rapidity(params: CurvatureParams, v: float) -> float:
    """``theta = T_{kappa2}^{-1}(-v)``; raises beyond the light cone."""
    return ck_tan_inv(params.kappa2, -v)


def boost_by_rapidity(params: CurvatureParams, theta: float, e: Event) -> Event:
    z = GenComplex(float(e.t), float(e.x), params.kappa2)
    zp = unit(theta, params.kappa2) * z
    return Event(zp.re, zp.im)


def boost(params: CurvatureParams, v: float, e: Event) -> Event:
    """Inertial transformation ``z -> exp(i theta) z`` on ``z = t + i x``."""
    return boost_by_rapidity(params, rapidity(params, v), e)
