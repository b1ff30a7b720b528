"""Shared exception base for the towerlab package.

Every error raised deliberately by the library derives from TowerlabError,
so callers can distinguish "the mathematics refused" from genuine bugs.
"""


class TowerlabError(Exception):
    """Base class for all towerlab-specific errors."""
