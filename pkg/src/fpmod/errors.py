class FpmodError(Exception):
    """Base class for engine faults."""


class ShapeError(FpmodError, ValueError):
    pass


class RingMismatch(FpmodError, ValueError):
    pass


class UnsupportedBackend(FpmodError):
    pass


class InvalidMorphism(FpmodError):
    pass


class NotExact(FpmodError):
    """A sequence expected to be exact failed verification."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class InternalInconsistency(FpmodError):
    """A construction that must always succeed did not (e.g. an image square
    that is completable by construction reported "unsolvable")."""
