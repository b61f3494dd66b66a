"""Exception types shared across the package."""


class PoligraphError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(PoligraphError):
    """Input bytes are not in the expected serialization format."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"format error at byte {offset}: {message}"
        super().__init__(message)
        self.offset = offset


class ValidationError(PoligraphError):
    """Well-formed input violates a documented invariant."""


class UnknownSegmentError(PoligraphError):
    """A segment id does not exist in the document tree."""


class OntologyError(PoligraphError):
    """An ontology file is malformed (cycle, undeclared term, wrong kind)."""


class ConfigError(PoligraphError):
    """A rule, lexicon, or run configuration file is unusable."""


class UnmappedVerbError(PoligraphError):
    """A collection rule references a verb with no action mapping."""
