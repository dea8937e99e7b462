"""Exception types shared across the library."""


class PpmError(Exception):
    """Base class for all library errors."""


class RangeError(PpmError):
    """A query reached beyond the sieved or computed range."""


class DomainError(PpmError):
    """An argument lies outside the mathematical domain of the operation."""


class ResourceLimitError(PpmError):
    """A requested computation exceeds the configured resource budget."""


class SequenceTooShortError(PpmError):
    """A modeled sequence does not extend far enough for the query."""


class UndefinedRatioError(PpmError):
    """A statistical ratio has an empty denominator on the requested range."""


class CacheFormatError(PpmError):
    """A sieve cache file is missing, truncated, or of the wrong format."""
