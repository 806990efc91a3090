class CountsError(Exception):
    pass


class DomainError(CountsError, ValueError):
    """Invalid sampling or fitting input."""


class HomFitError(CountsError):
    """The dip fit did not converge; carries the last parameter iterate and its residual."""

    def __init__(self, message: str, last_iterate=None, residual: float | None = None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class MonteCarloTrialError(CountsError):
    def __init__(self, trial: int, cause: Exception):
        super().__init__(f"estimator failed on Monte Carlo trial {trial}: {cause}")
        self.trial = trial
        self.cause = cause
