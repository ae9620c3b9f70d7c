"""Error hierarchy."""


class MyersVerifyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MyersVerifyError, ValueError):
    """A function was evaluated outside its domain."""


class ParameterError(MyersVerifyError, ValueError):
    """A parameter violates an operation's precondition."""


class IntegrationError(MyersVerifyError, RuntimeError):
    """The comparison ODE received non-finite input."""


class TabulatedFileError(ParameterError):
    """A two-column sample file could not be parsed."""

    def __init__(self, path: str, line: int | None, message: str):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")


class ScenarioError(ParameterError):
    """A scenario file is invalid; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
