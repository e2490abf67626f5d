from typing import Optional


class HamelError(Exception):
    """Base class for every error raised by the engine."""


class ScalarDivisionError(HamelError, ZeroDivisionError):
    pass


class ModelMismatchError(HamelError):
    """Vectors or points from unrelated models were combined."""


class ModeError(HamelError):
    """Operation not available in the model's mode (plain vs hamel)."""


class MalformedCutError(HamelError):
    pass


class EmptyIntervalError(HamelError):
    pass


class WitnessError(HamelError):
    """A witness construction failed its own postcondition check."""


class OracleError(HamelError):
    pass


class FormulaTypeError(HamelError):
    pass


class UnboundVariableError(HamelError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable '{name}'")
        self.name = name


class ExpressionSyntaxError(HamelError):
    def __init__(
        self,
        message: str,
        text: str = "",
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        self.message = message
        self.text = text
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class ModelFileError(HamelError):
    def __init__(self, message: str, path: str = "<model>", line: Optional[int] = None):
        self.path = path
        self.line = line
        location = f"{path}:{line}" if line is not None else path
        super().__init__(f"{location}: {message}")


class OutsideBallError(HamelError):
    """Element is not in the closed ball of the requested value."""


class NameConflictError(HamelError):
    pass
