"""Shared exception types."""


class FregxError(Exception):
    """Base class for all library errors."""


class ParseError(FregxError):
    """Malformed word, tuple literal, or alias."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (token {position})"
        super().__init__(message)
        self.position = position


class InvalidTupleError(FregxError):
    """A raw 5-tuple failed validation; `reason` is a machine-readable code."""

    def __init__(self, reason, message):
        super().__init__(message)
        self.reason = reason


class LandscapeError(FregxError):
    """A token sequence is not a landscape, or a junction mismatched."""


class HeightCapExceeded(FregxError):
    """A recursive construction hit the configured height cap."""


class DomainError(FregxError):
    """An argument lies outside an operation's stated domain."""


class NormalizationOverflow(FregxError):
    """Defensive step ceiling hit during normalization (implementation bug)."""
