"""Exceptions raised by strickland_lab."""


class StricklandLabError(Exception):
    """Base class for library errors."""


class ResourceBound(StricklandLabError):
    """An explicit enumeration budget would be exceeded."""


class NotSurjective(StricklandLabError, ValueError):
    """A map that must be onto its target is not."""


class NotTransitive(StricklandLabError, ValueError):
    """An action that must be transitive has several orbits."""
