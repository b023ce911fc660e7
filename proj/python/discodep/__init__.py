"""Discourse dependency parsing: corpus IO, decoders, structure metrics and
the score-file interface shared with external scorers."""

from ._core import *  # noqa: F401,F403
from ._core import (
    DepTree,
    DiscodepError,
    Document,
    ParseError,
    ScoreSet,
    ValidationError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
