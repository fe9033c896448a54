"""Legal width-changing rewrites: exchanges of adjacent independent events
and cancellation of zigzag cup/cap pairs.

An exchange swaps two adjacent events whose strand supports are disjoint,
re-indexing positions as needed.  Exchanging two critical events changes the
width by exactly -4 (minimum slid above a maximum), +4 (minimum slid below a
maximum), or 0 (same kinds); exchanges involving a crossing never change the
width.  Deltas are always recomputed from the profile, never derived from
that rule; the rule is asserted as a property in the tests.

A cancellation deletes an adjacent cup-then-cap pair that shares exactly one
strand (a zigzag).  A pair sharing both of the cup's strands bounds a circle
and is not cancellable; a cap-then-cup pair is a thin-level turnback and is
never cancellable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .core import (
    CAP,
    CUP,
    MorseEvent,
    MorsePresentation,
    ThinposError,
    validate,
)


class MoveError(ThinposError):
    pass


class IndexOutOfRangeError(MoveError):
    pass


class OverlappingSupportError(MoveError):
    pass


class NotCancellableError(MoveError):
    pass


EXCHANGE = "exchange"
CANCEL = "cancel"


@dataclass(frozen=True)
class Move:
    kind: str  # exchange | cancel
    index: int
    delta: int

    def apply(self, pres: MorsePresentation) -> MorsePresentation:
        if self.kind == EXCHANGE:
            new, _ = exchange(pres, self.index)
            return new
        return cancel(pres, self.index)


@dataclass(frozen=True)
class TraceStep:
    kind: str
    index: int
    width_after: int


@dataclass(frozen=True)
class MoveTrace:
    steps: tuple[TraceStep, ...]

    def to_json(self) -> str:
        return json.dumps(
            [{"kind": s.kind, "index": s.index, "width_after": s.width_after}
             for s in self.steps]) + "\n"

    @staticmethod
    def from_json(text: str) -> "MoveTrace":
        return MoveTrace(tuple(
            TraceStep(d["kind"], d["index"], d["width_after"])
            for d in json.loads(text)))


def _footprint_first(ev: MorseEvent) -> tuple[float, float]:
    """Interval occupied by the earlier event in the row between the pair.

    A cup's two new strands sit at ``i, i+1``; a crossing holds ``i, i+1``;
    a cap leaves only the seam between positions ``i-1`` and ``i``.
    """
    if ev.kind == CAP:
        return (ev.pos - 0.5, ev.pos - 0.5)
    return (float(ev.pos), float(ev.pos + 1))


def _footprint_second(ev: MorseEvent) -> tuple[float, float]:
    """Interval the later event needs in the row between the pair.

    A cup only needs the insertion boundary between ``k-1`` and ``k``.
    """
    if ev.kind == CUP:
        return (ev.pos - 0.5, ev.pos - 0.5)
    return (float(ev.pos), float(ev.pos + 1))


def exchange(pres: MorsePresentation, j: int) -> tuple[MorsePresentation, int]:
    """Swap events ``j`` and ``j+1``; returns the new presentation and the
    recomputed width delta.
    """
    validate(pres).raise_if_invalid()
    if not 0 <= j < len(pres.events) - 1:
        raise IndexOutOfRangeError(
            f"exchange index {j} out of range for {len(pres.events)} events")
    e1, e2 = pres.events[j], pres.events[j + 1]
    lo1, hi1 = _footprint_first(e1)
    lo2, hi2 = _footprint_second(e2)
    shift = {CUP: 2, CAP: -2}.get
    if e1.kind == CAP and e2.kind == CUP and e2.pos == e1.pos:
        # The cup fills the seam the cap just vacated.  Both sides of the
        # seam are free; re-insert on the right so that a cup-then-cap
        # exchange followed by its inverse restores the presentation.
        events = list(pres.events)
        events[j] = MorseEvent(CUP, e2.pos + 2)
        events[j + 1] = e1
        new = MorsePresentation(events)
        validate(new).raise_if_invalid()
        return new, new.width() - pres.width()
    if hi2 < lo1:
        # e2 acts strictly left of e1: its position is unchanged in the
        # original row; e1's position shifts by e2's strand-count change.
        e2_new = e2
        e1_new = MorseEvent(e1.kind, e1.pos + (shift(e2.kind) or 0))
    elif lo2 > hi1:
        # e2 acts strictly right of e1: undo e1's re-indexing of it.
        e2_new = MorseEvent(e2.kind, e2.pos - (shift(e1.kind) or 0))
        e1_new = e1
    else:
        raise OverlappingSupportError(
            f"events {j} ({e1}) and {j + 1} ({e2}) have overlapping supports")
    events = list(pres.events)
    events[j], events[j + 1] = e2_new, e1_new
    new = MorsePresentation(events)
    report = validate(new)
    if not report.ok:  # pragma: no cover - guarded by the legality check
        raise OverlappingSupportError(
            f"exchange at {j} produced an invalid presentation: {report.violation}")
    return new, new.width() - pres.width()


def cancel(pres: MorsePresentation, j: int) -> MorsePresentation:
    """Delete the zigzag cup/cap pair at events ``j``, ``j+1``.

    Legal when the cap consumes exactly one of the cup's two new strands plus
    one pre-existing neighbor; the surviving new strand splices into the
    consumed neighbor's slot, so no other event needs re-indexing.
    """
    validate(pres).raise_if_invalid()
    if not 0 <= j < len(pres.events) - 1:
        raise IndexOutOfRangeError(
            f"cancel index {j} out of range for {len(pres.events)} events")
    e1, e2 = pres.events[j], pres.events[j + 1]
    if e1.kind != CUP or e2.kind != CAP:
        raise NotCancellableError(
            f"events {j}, {j + 1} are {e1.kind}/{e2.kind}, not cup/cap")
    i, k = e1.pos, e2.pos
    if k == i:
        raise NotCancellableError(
            f"cap at {k} consumes both strands of cup at {i} (bounds a circle)")
    if k not in (i - 1, i + 1):
        raise NotCancellableError(
            f"cup at {i} and cap at {k} share no strand")
    events = list(pres.events)
    del events[j:j + 2]
    new = MorsePresentation(events)
    report = validate(new)
    if not report.ok:  # pragma: no cover - deletion preserves all positions
        raise NotCancellableError(
            f"cancel at {j} produced an invalid presentation: {report.violation}")
    return new


def enumerate_moves(pres: MorsePresentation) -> list[Move]:
    """All legal moves, each annotated with its recomputed width delta,
    in deterministic (kind, index) order."""
    validate(pres).raise_if_invalid()
    moves = []
    w = pres.width()
    for j in range(len(pres.events) - 1):
        try:
            _, delta = exchange(pres, j)
            moves.append(Move(EXCHANGE, j, delta))
        except MoveError:
            pass
        try:
            new = cancel(pres, j)
            moves.append(Move(CANCEL, j, new.width() - w))
        except MoveError:
            pass
    moves.sort(key=lambda m: (m.kind, m.index))
    return moves


def replay(pres: MorsePresentation, moves: Iterable[Move]) -> tuple[MorsePresentation, MoveTrace]:
    steps = []
    cur = pres
    for m in moves:
        cur = m.apply(cur)
        steps.append(TraceStep(m.kind, m.index, cur.width()))
    return cur, MoveTrace(tuple(steps))
