"""Exception types shared across the package."""


class ReflirsError(Exception):
    """Base class for package errors."""


class ResourceCapError(ReflirsError):
    """An enumeration exceeded its configured resource cap."""

    def __init__(self, message, partial_count=None):
        super().__init__(message)
        self.partial_count = partial_count


class MarginError(ReflirsError):
    """A computation touched the unreliable margin of a truncated window."""


class RecognitionError(ReflirsError):
    """An angle sequence is inconsistent with every gluing word."""


class ConstructionError(ReflirsError):
    """A block realization violates one of its required constraints."""


class VerificationError(ReflirsError):
    """An invariant check failed."""
