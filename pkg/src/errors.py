"""Exception types shared by the library and the CLI.

Each class carries the process exit code the CLI uses when it escapes a
command.
"""


class ToricCIError(Exception):
    exit_code = 1


class DimensionError(ToricCIError):
    exit_code = 2


class DomainError(ToricCIError):
    exit_code = 2


class UsageError(ToricCIError):
    exit_code = 2


class MatrixFormatError(ToricCIError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class InvalidBasis(ToricCIError):
    exit_code = 3


class InvalidConfiguration(ToricCIError):
    exit_code = 4


class NotHomogeneous(InvalidConfiguration):
    pass


class InvariantViolation(ToricCIError):
    exit_code = 5


class SizeCapExceeded(ToricCIError):
    exit_code = 6
