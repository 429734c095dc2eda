"""Exception types shared by every module."""


class HornlabError(Exception):
    """Base class for library errors."""


class ValidationError(HornlabError, ValueError):
    """Malformed input: unsorted sequences, bad subsets, non-Hermitian matrices."""


class DomainError(HornlabError, ValueError):
    """Well-formed input outside an operation's domain (size mismatch, rectangle overflow)."""


class ResourceLimitError(HornlabError):
    """Input exceeds the size that the brute-force routines are meant for."""
