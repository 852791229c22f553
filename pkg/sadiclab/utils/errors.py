"""Standardized errors for the library and the command line"""
from typing import Any, Dict, Optional

# Exit codes shared with the CLI
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class SadicError(Exception):
    """Base error with a stable, machine-readable structure"""
    exit_code = EXIT_USAGE

    def __init__(
        self,
        error_code: str,
        message: str,
        details: Optional[Dict[str, Any]] = None
    ):
        self.error_code = error_code
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "success": False,
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details
        }


# Predefined errors
class AlphabetError(SadicError):
    def __init__(self, message: str, symbols: Optional[list] = None):
        super().__init__(
            error_code="INVALID_ALPHABET",
            message=message,
            details={"symbols": symbols} if symbols is not None else {}
        )


class AlphabetMismatchError(SadicError):
    def __init__(self, left: tuple, right: tuple):
        super().__init__(
            error_code="ALPHABET_MISMATCH",
            message="Words or morphisms are over incompatible alphabets",
            details={"left": list(left), "right": list(right)}
        )


class EmptyPatternError(SadicError):
    def __init__(self, name: str = "u"):
        super().__init__(
            error_code="EMPTY_PATTERN",
            message=f"Pattern '{name}' must be non-empty",
            details={"field": name}
        )


class LengthError(SadicError):
    def __init__(self, message: str, requested: int, available: int):
        super().__init__(
            error_code="LENGTH_OUT_OF_RANGE",
            message=message,
            details={"requested": requested, "available": available}
        )


class OutOfWindowError(SadicError):
    def __init__(self, start: int, end: int, lowest: int, highest: int):
        super().__init__(
            error_code="OUT_OF_WINDOW",
            message=f"Positions [{start}, {end}) fall outside the window [{lowest}, {highest})",
            details={"from": start, "to": end, "window_start": lowest, "window_end": highest}
        )


class LetterOutsideDomainError(SadicError):
    def __init__(self, letter: str, domain: tuple):
        super().__init__(
            error_code="LETTER_OUTSIDE_DOMAIN",
            message=f"Letter '{letter}' is not in the morphism domain",
            details={"letter": letter, "domain": list(domain)}
        )


class MorphismError(SadicError):
    def __init__(self, message: str, letter: Optional[str] = None):
        super().__init__(
            error_code="INVALID_MORPHISM",
            message=message,
            details={"letter": letter} if letter is not None else {}
        )


class DirectiveError(SadicError):
    def __init__(self, message: str, level: Optional[int] = None):
        super().__init__(
            error_code="INVALID_DIRECTIVE",
            message=message,
            details={"level": level} if level is not None else {}
        )


class NonConvergenceError(SadicError):
    def __init__(self, level: int, target: int, stable_length: int, depth_used: int):
        super().__init__(
            error_code="NON_CONVERGENCE",
            message=f"Prefix of length {target} at level {level} not certified within the depth budget",
            details={
                "level": level,
                "target": target,
                "stable_length": stable_length,
                "depth_used": depth_used
            }
        )


class InsufficientOccurrencesError(SadicError):
    def __init__(self, pattern: str, found: int, needed: int = 2):
        super().__init__(
            error_code="INSUFFICIENT_OCCURRENCES",
            message=f"Window holds {found} usable occurrence(s) of '{pattern}', {needed} needed",
            details={"pattern": pattern, "found": found, "needed": needed}
        )


class FactorizationError(SadicError):
    def __init__(self, letter: str, segment: str, message: str = "Return word does not factor over the previous level"):
        super().__init__(
            error_code="FACTORIZATION_FAILED",
            message=message,
            details={"letter": letter, "segment": segment}
        )


class IncompleteTableError(SadicError):
    def __init__(self, level: int, span: int, required_span: int, counts: list):
        super().__init__(
            error_code="INCOMPLETE_TABLE",
            message=f"Return-word table at level {level} is not window-complete",
            details={
                "level": level,
                "span": span,
                "required_span": required_span,
                "counts": counts
            }
        )


class InputFormatError(SadicError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(
            error_code="INPUT_FORMAT",
            message=f"{path}:{line}: {message}",
            details={"path": path, "line": line}
        )


class ParameterError(SadicError):
    def __init__(self, field: str, message: str):
        super().__init__(
            error_code="INVALID_PARAMETER",
            message=message,
            details={"field": field}
        )


class UsageError(SadicError):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(
            error_code="USAGE",
            message=message,
            details={"usage": usage} if usage else {}
        )


class ResourceLimitError(SadicError):
    def __init__(self, message: str):
        super().__init__(
            error_code="RESOURCE_LIMIT",
            message=message
        )


class CheckFailedError(SadicError):
    """A check ran to completion and its bound or identity did not hold"""
    exit_code = EXIT_CHECK_FAILED

    def __init__(self, check: str, message: str = ""):
        super().__init__(
            error_code="CHECK_FAILED",
            message=message or f"{check}: check failed",
            details={"check": check}
        )
