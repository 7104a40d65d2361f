"""Exception hierarchy shared by all toricmarkov modules."""

from __future__ import annotations


class ToricMarkovError(Exception):
    """Base class for every error raised by this package."""


class EmptyMatrix(ToricMarkovError):
    pass


class ZeroColumn(ToricMarkovError):
    def __init__(self, index: int):
        super().__init__(f"column {index} is the zero vector")
        self.index = index


class NotConfiguration(ToricMarkovError):
    """The kernel meets the nonnegative orthant; ``certificate`` is such a vector."""

    def __init__(self, certificate: tuple[int, ...]):
        super().__init__(
            f"not a configuration matrix: nonnegative kernel vector {list(certificate)}"
        )
        self.certificate = certificate


class BudgetExceeded(ToricMarkovError):
    """Raised by the completion engine when its S-pair or time budget runs out."""

    def __init__(self, message: str, progress: dict | None = None):
        super().__init__(message)
        self.progress = dict(progress or {})


class FiberTooLarge(ToricMarkovError):
    def __init__(self, key: tuple[int, ...], limit: int):
        super().__init__(f"fiber {list(key)} has more than {limit} elements")
        self.key = key
        self.limit = limit


class LimitExceeded(ToricMarkovError):
    """Too many bases requested for in-memory materialization."""


class BadSequence(ToricMarkovError, ValueError):
    pass


class MovesNotInKernel(ToricMarkovError):
    def __init__(self, move: tuple[int, ...]):
        super().__init__(f"move {list(move)} is not in the kernel of A")
        self.move = move


class NotGenerating(ToricMarkovError):
    def __init__(self, verdict):
        super().__init__(f"move set does not generate the toric ideal: {verdict.describe()}")
        self.verdict = verdict


class ParseError(ToricMarkovError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class RaggedRows(ParseError):
    pass
