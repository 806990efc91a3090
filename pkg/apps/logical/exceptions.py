from apps.mode_core.exceptions import DomainError as ModeDomainError


class LogicalError(Exception):
    pass


class DomainError(LogicalError, ModeDomainError):
    """The logical pipeline was asked for something outside its domain."""
