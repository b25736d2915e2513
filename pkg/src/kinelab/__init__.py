"""Cayley-Klein kinematics: generalized complex numbers and quaternions,
kinematical Lie algebras, and the generalized Hopf fibration."""

from kinelab.errors import (DomainError, IntegrationError, KinelabError,
                            ParameterError, ShapeError)
from kinelab.gctrig import GenComplex, ck_trig
from kinelab.kinematics import PRESETS, StructureConstants, classify, classify_sc
from kinelab.projective import ChartPoint, ProjectivePoint
from kinelab.quaternions import CurvatureParams, GenQuaternion

__version__ = "0.1.0"

__all__ = [
    "ChartPoint", "CurvatureParams", "DomainError", "GenComplex", "GenQuaternion",
    "IntegrationError", "KinelabError", "PRESETS", "ParameterError", "ProjectivePoint",
    "ShapeError", "StructureConstants", "ck_trig", "classify", "classify_sc",
]
