"""Exception types shared across the package."""

__all__ = [
    "SurfaceError",
    "DomainError",
    "SingularPoint",
    "DegenerateImmersion",
    "OriginContact",
    "PoleContact",
    "EmptyMesh",
    "EmptySection",
    "InsufficientSamples",
    "ExtensionDivergence",
    "RefitTailError",
    "NonMinimalResult",
    "PoleOnPath",
    "AmbiguousTransport",
    "ConfigError",
]


class SurfaceError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SurfaceError):
    """Parameter point lies outside the surface domain."""


class SingularPoint(SurfaceError):
    """Parameter point belongs to the declared singular set of the chart."""


class DegenerateImmersion(SurfaceError):
    """First fundamental form is numerically rank deficient at the point."""


class OriginContact(SurfaceError):
    """Evaluation point is within the clip radius of the origin."""


class PoleContact(SurfaceError):
    """A Moebius-type rational map is evaluated at (or too close to) its pole."""


class EmptyMesh(SurfaceError):
    """Grid sampling produced no valid vertex."""


class EmptySection(SurfaceError):
    """Cross-section plane does not intersect the valid part of the mesh."""


class InsufficientSamples(SurfaceError):
    """Too few samples to determine the requested Fourier modes."""


class ExtensionDivergence(SurfaceError):
    """Certified Fourier tail bound exceeds tolerance on the requested strip."""


class RefitTailError(SurfaceError):
    """Adaptive Fourier refit could not reach the tail tolerance within the mode cap."""


class NonMinimalResult(SurfaceError):
    """Constructed surface failed its built-in mean-curvature self-check."""


class PoleOnPath(SurfaceError):
    """Integration path passes through a pole of the integrand."""


class AmbiguousTransport(SurfaceError):
    """Normal transport along a loop cannot be continued unambiguously."""


class ConfigError(SurfaceError):
    """Run configuration is malformed or inconsistent."""
