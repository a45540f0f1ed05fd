"""Exception types raised across the library.

Every error carries a human-readable message; parsing errors additionally
carry the byte offset at which the stream became unreadable so batch tools
can point at the exact spot in a broken file.
"""


class PoseBenchError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------------------
# scheme registry
# ---------------------------------------------------------------------------

class SchemeError(PoseBenchError):
    """A keypoint scheme descriptor is unusable or a lookup failed."""


class UnknownScheme(SchemeError):
    pass


class OverlappingComponents(SchemeError):
    pass


class MissingComponent(SchemeError):
    pass


class MissingLandmark(SchemeError):
    pass


# ---------------------------------------------------------------------------
# container / interchange
# ---------------------------------------------------------------------------

class ContainerError(PoseBenchError):
    """Base for byte-stream parsing problems. ``offset`` is the position
    (in bytes from the start of the stream) where parsing failed."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class BadMagic(ContainerError):
    pass


class UnsupportedVersion(ContainerError):
    pass


class MalformedPayload(ContainerError):
    pass


class CountMismatch(PoseBenchError):
    """Keypoint count of a sequence does not match the scheme it claims."""


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------

class NoValidShoulders(PoseBenchError):
    """No frame has both shoulders detected, so the sequence cannot be
    spatially normalized."""


class UnmaskedMissing(PoseBenchError):
    """A zero-confidence keypoint still carries non-zero coordinates."""


# ---------------------------------------------------------------------------
# stability metrics
# ---------------------------------------------------------------------------

class TooShort(PoseBenchError):
    """Sequence has fewer frames than the difference stencil needs."""


class NoValidWindows(PoseBenchError):
    """Every differencing window touches a missing sample."""


class EmptyInput(PoseBenchError):
    pass


# ---------------------------------------------------------------------------
# hand presence
# ---------------------------------------------------------------------------

class LandmarkMissing(PoseBenchError):
    """A landmark needed by a per-frame test has confidence zero."""


class NoSigningFrames(PoseBenchError):
    """No frame of the sequence (or corpus) passes the signing test."""
