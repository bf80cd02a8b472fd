# dependence_core/errors.py
"""Exception hierarchy shared by the engine and the command line."""

from dataclasses import dataclass
from typing import Any, List, Optional


class LogicError(Exception):
    """Base class for every error the engine raises on bad input."""


class FormulaSyntaxError(LogicError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"syntax error{where}: {message}")


class ReservedSymbolError(LogicError):
    pass


@dataclass(frozen=True)
class Violation:
    node: Any
    rule: str

    def __str__(self):
        from .syntax import to_text
        return f"{to_text(self.node)}: {self.rule}"


class FragmentError(LogicError):
    def __init__(self, fragment, violations: List[Violation]):
        self.fragment = fragment
        self.violations = list(violations)
        listed = "; ".join(str(v) for v in self.violations)
        super().__init__(f"fragment violation ({fragment.value}): {listed}")


class GuardError(LogicError):
    pass


class ModelError(LogicError):
    pass


class UnsupportedConstructError(LogicError):
    pass


class SchemaError(LogicError):
    pass


class DerivationFormatError(LogicError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{message}")
