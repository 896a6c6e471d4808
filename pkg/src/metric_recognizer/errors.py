"""Exception hierarchy shared by every module of the package.

Indices stored on exceptions are 0-based, like the rest of the Python API.
Serializers add one when writing witnesses out.
"""
from __future__ import annotations


class MetricError(Exception):
    """Base class for all errors raised by ``metric_recognizer``."""


class ParseError(MetricError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ShapeError(MetricError, ValueError):
    """Matrix is not a predistance matrix (shape, symmetry, diagonal, sign)."""

    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        self.indices = tuple(indices)
        super().__init__(message)


class TriangleViolation(MetricError, ValueError):
    """``D[i, j] > D[i, k] + D[k, j]``; stored as ``(i, k, j)`` with the three values."""

    def __init__(self, i: int, k: int, j: int, d_ij, d_ik, d_kj):
        self.indices = (i, k, j)
        self.values = (d_ij, d_ik, d_kj)
        super().__init__(
            f"triangle inequality fails at ({i + 1}, {k + 1}, {j + 1}): "
            f"{d_ij} > {d_ik} + {d_kj}"
        )


class DisconnectedSkeleton(MetricError):
    pass


class Disconnected(MetricError):
    def __init__(self, i: int, j: int):
        self.indices = (i, j)
        super().__init__(f"vertices {i + 1} and {j + 1} are not connected")


class NotATree(MetricError):
    pass


class RangeError(MetricError, ValueError):
    pass


class OrderError(MetricError, ValueError):
    """Matrix order does not fit the family a recognizer targets."""

    expected = ""

    def __init__(self, m: int):
        self.m = m
        super().__init__(f"{type(self).__name__}: matrix order {m}, expected {self.expected}")


class OrderNotPowerOfTwo(OrderError):
    expected = "a power of two"


class OrderNot8(OrderError):
    expected = "8"


class OrderNot10(OrderError):
    expected = "10"


class VerificationFailed(MetricError):
    """A reconstructed graph does not reproduce the input matrix (recognizer bug)."""

    def __init__(self, i: int, j: int, expected, got):
        self.indices = (i, j)
        self.expected = expected
        self.got = got
        super().__init__(
            f"reconstruction mismatch at ({i + 1}, {j + 1}): expected {expected}, got {got}"
        )


class SizeGuard(MetricError, ValueError):
    pass


class SpecError(MetricError, ValueError):
    pass
