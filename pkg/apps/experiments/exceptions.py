class ExperimentError(Exception):
    pass


class ConfigurationError(ExperimentError):
    """The experiment manifest or a command-line override is invalid."""
