"""Exception hierarchy. Every domain failure derives from :class:`MoriConeError`."""


class MoriConeError(ValueError):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class InvalidConfiguration(MoriConeError):
    pass


class ZeroNormError(MoriConeError):
    pass


class DimensionMismatch(MoriConeError):
    pass


class NoSpanningSubset(MoriConeError):
    pass


class Infeasible(MoriConeError):
    pass


class DimensionCapExceeded(MoriConeError):
    pass


class ParseError(MoriConeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
