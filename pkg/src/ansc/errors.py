"""Exception types shared across the package."""

from __future__ import annotations


class AnscError(Exception):
    """Base class for every error raised by this library."""


class AlphabetError(AnscError):
    """Bad alphabet declaration, or a symbol outside the declared alphabet."""


class RegexSyntaxError(AnscError):
    """Malformed pattern text. `offset` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class NotTrimmedError(AnscError):
    """The operation requires a trim automaton."""


class EmptyLanguageError(AnscError):
    """The automaton accepts no string at all."""


class FiniteLanguageError(AnscError):
    """The language is finite where an infinite one is required."""


class NotInLanguageError(AnscError):
    """String is not a member of the language.

    `reason` is "dead-prefix" when no member starts with w[:offset+1], and
    "non-accepting" when the whole string is a proper prefix of members only.
    """

    def __init__(self, message: str, reason: str, offset: int):
        super().__init__(f"{message} ({reason} at offset {offset})")
        self.reason = reason
        self.offset = offset


class NoSuchLengthError(AnscError):
    """The language contains no string of the requested length."""


class NotFactorialError(AnscError):
    """Block compression needs a substring-closed source language."""


class BlockMembershipError(NotInLanguageError):
    """A block of the input is not a member of the source language."""

    def __init__(self, message: str, reason: str, offset: int, block_index: int):
        super().__init__(f"block {block_index}: {message}", reason, offset)
        self.block_index = block_index


class FrameFormatError(AnscError):
    """Corrupt, truncated, or incompatible frame bytes."""


class CapacityError(AnscError):
    """The result would exceed the configured cache or output limits."""
