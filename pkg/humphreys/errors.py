"""
Error types shared by the library and the command line.

Every error carries a stable ``code`` string (used in JSON reports) and the
process ``exit_code`` the CLI should return for it.
"""

from typing import Any, Dict, Optional


class HumphreysError(Exception):
    code = "error"
    exit_code = 5

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        payload = {"status": "error", "code": self.code, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload


class InputError(HumphreysError, ValueError):
    """Malformed or out-of-range input (dimension mismatch, bad window, ...)."""
    code = "input_error"
    exit_code = 2


class PreconditionError(InputError):
    code = "precondition"


class NotInSpanError(HumphreysError):
    code = "not_in_span"
    exit_code = 2


class BoxExhausted(HumphreysError):
    """The search box was too small to contain any block label."""
    code = "box_exhausted"
    exit_code = 4


class NotCoquasiError(HumphreysError):
    code = "not_coquasi"
    exit_code = 2


class CalibrationError(HumphreysError):
    code = "calibration_failure"
    exit_code = 3


class InconclusiveError(HumphreysError):
    code = "inconclusive"
    exit_code = 4


class InvariantBreach(HumphreysError):
    code = "invariant_breach"
    exit_code = 5
