"""Shared hand-checked presentations used across the test suite."""

from thinpos.core import MorsePresentation, cap, cup, xpos

UNKNOT = MorsePresentation([cup(0), cap(0)])

# Standard 3-crossing trefoil in bridge position: gaps [2, 4, 2], width 8.
P1 = MorsePresentation(
    [cup(0), cup(1), xpos(1), xpos(1), xpos(1), cap(1), cap(0)])

# P1 with a zigzag wiggle inserted: gaps [2, 4, 2, 4, 2], width 14.
P2 = MorsePresentation(
    [cup(0), cup(1), cap(2), cup(2), xpos(1), xpos(1), xpos(1), cap(1), cap(0)])

# Two nested-then-split unknot components: gaps [2, 4, 2], 2 components.
TWO_COMPONENT = MorsePresentation([cup(0), cup(2), cap(0), cap(0)])
