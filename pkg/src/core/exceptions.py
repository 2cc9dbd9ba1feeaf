"""Exception hierarchy for conjtensor"""

from typing import Any, Optional


class ConjTensorError(Exception):
    """Base class for every library error"""


class DimensionError(ConjTensorError):
    """Shapes or vector lengths do not match"""


class ArgumentError(ConjTensorError):
    """An argument is out of range or repeated"""


class StructureError(ConjTensorError):
    """A tensor or polynomial lacks the structure an operation requires"""


class ParseError(ConjTensorError):
    """Polynomial text does not conform to the grammar"""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class ConvergenceError(ConjTensorError):
    """No start of an iterative solver reached its tolerance"""

    def __init__(self, message: str, best_residual: Optional[float] = None):
        if best_residual is not None:
            message = f"{message}; best residual {best_residual:.3e}"
        super().__init__(message)
        self.best_residual = best_residual


class RelationError(ConjTensorError):
    """An eigenvalue relation failed to verify"""

    def __init__(self, message: str, pair: Optional[Any] = None):
        super().__init__(message)
        self.pair = pair


class InternalError(ConjTensorError):
    """A computed object violates a guaranteed property"""


class DocumentError(ConjTensorError):
    """An input document is malformed or fails validation"""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
