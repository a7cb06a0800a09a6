from typing import Optional

from services.errors.base import InputError


class DimensionMismatchError(InputError):
    """Operands are not conformable"""
    pass


class KernelSpecError(InputError):
    """Kernel description is invalid or unsupported for the requested operation"""
    pass


class ConfigSchemaError(InputError):
    """Experiment or model document does not match its schema"""
    pass


class DatasetParseError(InputError):
    """Dataset CSV could not be parsed

    Attributes:
        line: 1-based line number in the file (header is line 1), when known
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
