from django.core.management.base import CommandError
import logging

logger = logging.getLogger(__name__)

EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


class CodingError(Exception):
    """Base class for every error raised by the coding-theory apps"""
    exit_code = EXIT_USAGE
    message = 'A coding error occurred'

    def __init__(self, message=None, **details):
        self.details = details
        super().__init__(message or self.message)


# Fields
class NotPrime(CodingError):
    message = 'Characteristic is not prime'


class ReducibleModulus(CodingError):
    message = 'Modulus polynomial is reducible'


class DivisionByZero(CodingError):
    message = 'Division by zero'


class FieldMismatch(CodingError):
    message = 'Operands belong to different fields'


class UnsupportedField(CodingError):
    message = 'Characteristic does not fit the 64-bit arithmetic kernel'


class MissingSubfield(CodingError):
    message = 'Field has no subfield marker'


class ParseError(CodingError):
    message = 'Could not parse polynomial'


class InternalInvariantViolation(CodingError):
    exit_code = EXIT_VERIFICATION_FAILED
    message = 'Internal invariant violated'


# Linear algebra
class Singular(CodingError):
    message = 'Matrix is singular'


class ShapeMismatch(CodingError):
    message = 'Shapes do not match'


# Bases
class RowCountOutOfRange(CodingError):
    message = 'Row count out of range'


class NotABasis(CodingError):
    message = 'Elements are not linearly independent over the subfield'


class NoSelfDualBasis(CodingError):
    message = 'No self-dual basis exists: requires q even, or q and m both odd'


class FactorizationFailed(CodingError):
    exit_code = EXIT_VERIFICATION_FAILED
    message = 'Congruence factorization of the Gram matrix failed'


# Codes and hulls
class DimensionOutOfRange(CodingError):
    message = 'Code dimension out of range'


class FullDimension(CodingError):
    message = 'Code is the full space and has no parity check'


class TooLarge(CodingError):
    message = 'Instance exceeds the configured budget'


class OutOfRange(CodingError):
    message = 'Parameter out of range'


class OddLength(CodingError):
    message = 'Hermitian test requires even m'


class InvalidHullDim(CodingError):
    message = 'Hull dimension exceeds min(k, m - k)'


def command_error(exc):
    """Convert a CodingError into a CommandError carrying its exit code"""
    exit_code = getattr(exc, 'exit_code', EXIT_USAGE)
    if exit_code == EXIT_VERIFICATION_FAILED:
        logger.error(f"{type(exc).__name__}: {exc}", exc_info=True)
    else:
        logger.warning(f"{type(exc).__name__}: {exc}")
    return CommandError(f"{type(exc).__name__}: {exc}", returncode=exit_code)
