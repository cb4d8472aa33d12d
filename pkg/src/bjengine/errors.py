"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for engine failures that map to structured API errors."""

    code = "engine-error"


class EmptyDeckError(EngineError):
    """A probability was requested from a deck with too few cards."""

    code = "empty-deck"


class EmptyRankError(EngineError):
    """A card was removed from a rank whose count is already zero."""

    code = "empty-rank"


class DegenerateConditionError(EngineError):
    """Conditioning on 'dealer has no natural' is impossible.

    Raised when every candidate hole card completes the dealer's natural,
    so the conditional measure does not exist.
    """

    code = "degenerate-condition"
