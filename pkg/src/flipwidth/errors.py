"""Exception hierarchy shared by all modules."""


class FlipwidthError(Exception):
    """Base class for all library errors."""


class DomainError(FlipwidthError, ValueError):
    """A vertex, parameter or flip lies outside the allowed domain."""


class GraphFormatError(FlipwidthError, ValueError):
    """Malformed graph / interchange / scene JSON."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class ContractError(FlipwidthError):
    """A documented precondition of an operation does not hold."""


class StrategyFault(FlipwidthError):
    """A strategy produced an illegal move (or could not produce any)."""

    def __init__(self, player, message):
        self.player = player
        super().__init__(f"{player}: {message}")


class ResourceLimitError(FlipwidthError):
    """The exact solver's state space exceeds the configured bound."""


class ConstructionError(FlipwidthError):
    """A geometric construction failed its own structural checks."""
