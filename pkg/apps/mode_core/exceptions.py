class ModeCoreError(Exception):
    pass


class DomainError(ModeCoreError, ValueError):
    """An argument lies outside the physical domain of an operation."""


class PassivityError(DomainError):
    pass
