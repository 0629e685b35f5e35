"""
Exceptions raised by quditops.
"""

from typing import Optional


class QuditError(Exception):
    """Base exception for quditops errors."""
    pass


class DomainError(QuditError, ValueError):
    """Raised when an argument is outside the domain of an operation."""
    pass


class ZeroProbabilityError(DomainError):
    """Raised when conditioning on a measurement outcome that cannot occur."""
    pass


class CircuitParseError(QuditError):
    """
    Raised when a circuit description cannot be parsed.

    Arguments:
        message: Human-readable description of the problem.
        gate_index: Index of the offending gate in the gate list, or None
            if the problem is not tied to a single gate.
    """

    def __init__(self, message: str, gate_index: Optional[int] = None):
        if gate_index is not None:
            message = f'gate {gate_index}: {message}'
        super().__init__(message)
        self.gate_index = gate_index


class VerificationError(QuditError):
    """Raised when enumeration results disagree with the counting formulas."""

    def __init__(self, report):
        super().__init__(f'verification failed for radix {report.radix}: '
                         f'{len(report.failures)} failure(s)')
        self.report = report
