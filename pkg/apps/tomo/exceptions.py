class TomographyError(Exception):
    pass


class DomainError(TomographyError, ValueError):
    """An input violates the preconditions of a tomography operation."""


class ReconstructionError(TomographyError):
    """A reconstruction could not be carried out numerically."""
