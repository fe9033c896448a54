import random

import pytest

from thinpos.core import CAP, CUP, XNEG, XPOS, MorseEvent, MorsePresentation


def random_presentation(rng: random.Random, max_events: int = 20) -> MorsePresentation:
    """A uniformly messy but always-valid presentation with <= max_events events."""
    target = rng.randint(2, max_events)
    events = []
    n = 0
    while len(events) < target or n > 0:
        remaining = target - len(events)
        choices = []
        # A cup is allowed only if there is still room to cap everything off.
        if n == 0 or (n + 2) // 2 <= remaining - 1:
            choices.append(CUP)
        if n >= 2:
            if n // 2 <= remaining - 1 or n // 2 == remaining:
                choices.append(CAP)
            if n // 2 < remaining:  # leave room for the caps
                choices.extend([XPOS, XNEG])
        if not choices:
            choices = [CAP]
        kind = rng.choice(choices)
        if kind == CUP:
            pos = rng.randint(0, n)
            n += 2
        else:
            pos = rng.randint(0, n - 2)
            if kind == CAP:
                n -= 2
        events.append(MorseEvent(kind, pos))
    pres = MorsePresentation(events)
    assert pres.is_valid()
    return pres


@pytest.fixture
def rng():
    return random.Random(20260824)
