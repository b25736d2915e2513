"""Exception hierarchy shared by all kinelab modules."""


class KinelabError(Exception):
    """Base class for every error raised by kinelab."""


class ParameterError(KinelabError, ValueError):
    """Operands carry incompatible curvature parameters, or a parameter is malformed."""


class DomainError(KinelabError, ValueError):
    """An operation was evaluated outside its domain (light cone, null locus, zero divisor)."""


class ShapeError(KinelabError, ValueError):
    """An array or matrix does not have the required shape or structure."""


class IntegrationError(KinelabError, RuntimeError):
    """A numerical integration drifted beyond its tolerance."""
