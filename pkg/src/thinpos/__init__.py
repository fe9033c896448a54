"""Width calculus for links given as Morse event sequences.

A link is described bottom-to-top by a sequence of events: cups (minima),
caps (maxima), and crossings.  This package computes widths and thin/thick
level structure, searches for thinner presentations via legal local moves,
brute-force-checks the structural facts about width-minimal vertical
arrangements of two colored strand families, and audits user-supplied
compressing-disk certificates for consistency with those facts.
"""

from .core import (
    CUP,
    CAP,
    XPOS,
    XNEG,
    MorseEvent,
    MorsePresentation,
    LevelProfile,
    WidthLadder,
    ValidationReport,
    InvalidPresentationError,
    NotAThinGapError,
    BadGapOrderError,
    level_profile,
    potentially_alternating,
    turbulent,
    validate,
)
from .textio import parse, serialize, ParseError

__all__ = [
    "CUP",
    "CAP",
    "XPOS",
    "XNEG",
    "MorseEvent",
    "MorsePresentation",
    "LevelProfile",
    "WidthLadder",
    "ValidationReport",
    "InvalidPresentationError",
    "NotAThinGapError",
    "BadGapOrderError",
    "level_profile",
    "potentially_alternating",
    "turbulent",
    "validate",
    "parse",
    "serialize",
    "ParseError",
]

__version__ = "0.1.0"
