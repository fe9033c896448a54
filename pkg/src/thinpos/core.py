"""Core data model: Morse presentations, strand tracking, and level structure.

Conventions used throughout the package:

* Events are read bottom to top.  A cup at position ``i`` inserts two new
  strands at row positions ``i, i+1`` (legal for ``0 <= i <= n``); a cap or
  crossing at position ``i`` acts on row positions ``i, i+1`` (legal for
  ``0 <= i <= n-2``).
* Gaps exist only strictly between consecutive critical (cup/cap) events.
  Crossings are regular points and never break a gap.  With ``m`` critical
  events there are ``m-1`` gaps, indexed from the bottom.
* A gap is *thin* when the critical event below it is a cap and the one above
  is a cup; *thick* for cup-below/cap-above; otherwise neither.
* Width is the sum of the strand counts over all gaps.
* Arcs (maximal monotone sub-arcs of the link) are numbered in birth order:
  the ``c``-th cup creates arcs ``2c`` (left leg) and ``2c+1`` (right leg).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

CUP = "cup"
CAP = "cap"
XPOS = "x+"
XNEG = "x-"

EVENT_KINDS = (CUP, CAP, XPOS, XNEG)
CRITICAL = frozenset({CUP, CAP})
CROSSINGS = frozenset({XPOS, XNEG})

THIN = "thin"
THICK = "thick"
NEITHER = "neither"


class ThinposError(Exception):
    """Base class for errors raised by this package."""


class InvalidPresentationError(ThinposError):
    """An operation was asked to run on a presentation that fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(str(report.violation))


class NotAThinGapError(ThinposError):
    """A gap reference that must be thin is not."""


class BadGapOrderError(ThinposError):
    """A pair of gap references is not in the required bottom-to-top order."""


@dataclass(frozen=True)
class MorseEvent:
    kind: str
    pos: int

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.pos < 0:
            raise ValueError(f"negative event position {self.pos}")

    def is_critical(self) -> bool:
        return self.kind in CRITICAL

    def __str__(self) -> str:
        return f"{self.kind} {self.pos}"


def cup(i: int) -> MorseEvent:
    return MorseEvent(CUP, i)


def cap(i: int) -> MorseEvent:
    return MorseEvent(CAP, i)


def xpos(i: int) -> MorseEvent:
    return MorseEvent(XPOS, i)


def xneg(i: int) -> MorseEvent:
    return MorseEvent(XNEG, i)


@dataclass(frozen=True)
class Violation:
    code: str  # NegativeStrandCount | PositionOutOfRange | UnbalancedCupsCaps | NonzeroFinalCount
    event_index: int  # earliest offending event; len(events) for end-of-sequence violations
    message: str

    def __str__(self) -> str:
        return f"{self.code} at event {self.event_index}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: Optional[Violation]
    components: Optional[int]
    split_gaps: tuple[int, ...]  # interior gaps where the strand count is zero
    split_warning: bool  # >1 component or a zero-count interior gap

    def raise_if_invalid(self) -> None:
        if not self.ok:
            raise InvalidPresentationError(self)


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)


@dataclass(frozen=True)
class Arc:
    """A maximal monotone strand between its birth cup and death cap.

    ``birth`` and ``death`` are indices into the critical-event ordering, so
    the arc crosses exactly the gaps ``birth .. death-1``.
    """

    arc_id: int
    birth: int
    death: int

    def crosses(self, gap: int) -> bool:
        return self.birth <= gap < self.death

    def has_critical_between(self, g1: int, g2: int) -> bool:
        """True if either endpoint event lies strictly between gaps g1 < g2.

        Critical event ``q`` sits between gap ``q-1`` and gap ``q``.
        """
        lo, hi = min(g1, g2), max(g1, g2)
        return (lo < self.birth <= hi) or (lo < self.death <= hi)


@dataclass(frozen=True)
class StrandIncidence:
    """Gap-crossing data for every arc of a presentation."""

    arcs: tuple[Arc, ...]

    def arc(self, arc_id: int) -> Arc:
        return self.arcs[arc_id]

    def arcs_crossing(self, gap: int) -> tuple[int, ...]:
        return tuple(a.arc_id for a in self.arcs if a.crosses(gap))

    def strands_meet_gap(self, arc_ids: Iterable[int], gap: int) -> bool:
        return any(self.arcs[a].crosses(gap) for a in arc_ids)


@dataclass(frozen=True)
class WidthLadder:
    """Distinct thin-gap widths in strictly increasing order."""

    values: tuple[int, ...]

    def rank_of_width(self, width: int) -> int:
        return self.values.index(width)


@dataclass(frozen=True)
class LevelProfile:
    gap_counts: tuple[int, ...]
    gap_classes: tuple[str, ...]
    width: int
    thin_gaps: tuple[int, ...]  # gap indices, bottom to top
    ladder: WidthLadder

    def thin_gap_widths(self) -> tuple[int, ...]:
        return tuple(self.gap_counts[g] for g in self.thin_gaps)

    def rank(self, gap: int) -> int:
        if self.gap_classes[gap] != THIN:
            raise NotAThinGapError(f"gap {gap} is {self.gap_classes[gap]}, not thin")
        return self.ladder.rank_of_width(self.gap_counts[gap])


@dataclass(frozen=True)
class MorsePresentation:
    events: tuple[MorseEvent, ...]

    def __init__(self, events: Iterable[MorseEvent]):
        object.__setattr__(self, "events", tuple(events))

    def __len__(self) -> int:
        return len(self.events)

    @cached_property
    def _scan(self) -> dict:
        """Single pass over the events: legality, rows, arcs, components."""
        row: list[int] = []  # arc ids, left to right
        uf = _UnionFind()
        births: dict[int, int] = {}
        deaths: dict[int, int] = {}
        next_arc = 0
        crit_index = 0
        counts_after_crit: list[int] = []
        violation: Optional[Violation] = None
        cups = caps = 0

        for j, ev in enumerate(self.events):
            n = len(row)
            if ev.kind == CUP:
                if not (0 <= ev.pos <= n):
                    violation = Violation(
                        "PositionOutOfRange", j,
                        f"cup at {ev.pos} with {n} strands (legal: 0..{n})")
                    break
                a, b = next_arc, next_arc + 1
                next_arc += 2
                uf.add(a)
                uf.add(b)
                uf.union(a, b)
                births[a] = crit_index
                births[b] = crit_index
                row[ev.pos:ev.pos] = [a, b]
                cups += 1
                crit_index += 1
                counts_after_crit.append(len(row))
            elif ev.kind == CAP:
                if not (0 <= ev.pos <= n - 2):
                    violation = Violation(
                        "PositionOutOfRange", j,
                        f"cap at {ev.pos} with {n} strands (legal: 0..{n - 2})")
                    break
                a, b = row[ev.pos], row[ev.pos + 1]
                uf.union(a, b)
                deaths[a] = crit_index
                deaths[b] = crit_index
                del row[ev.pos:ev.pos + 2]
                caps += 1
                crit_index += 1
                counts_after_crit.append(len(row))
            else:
                if not (0 <= ev.pos <= n - 2):
                    violation = Violation(
                        "PositionOutOfRange", j,
                        f"crossing at {ev.pos} with {n} strands (legal: 0..{n - 2})")
                    break
                row[ev.pos], row[ev.pos + 1] = row[ev.pos + 1], row[ev.pos]

        if violation is None and cups != caps:
            violation = Violation(
                "UnbalancedCupsCaps", len(self.events),
                f"{cups} cups vs {caps} caps")
        if violation is None and row:
            violation = Violation(
                "NonzeroFinalCount", len(self.events),
                f"{len(row)} strands remain at the top")

        components = None
        arcs: tuple[Arc, ...] = ()
        if violation is None:
            roots = {uf.find(a) for a in range(next_arc)}
            components = len(roots)
            arcs = tuple(
                Arc(a, births[a], deaths[a]) for a in range(next_arc))

        return {
            "violation": violation,
            "components": components,
            "counts_after_crit": counts_after_crit,
            "arcs": arcs,
        }

    @cached_property
    def validation(self) -> ValidationReport:
        scan = self._scan
        violation = scan["violation"]
        if violation is not None:
            return ValidationReport(False, violation, None, (), False)
        counts = scan["counts_after_crit"]
        gap_counts = counts[:-1] if counts else []
        split_gaps = tuple(g for g, c in enumerate(gap_counts) if c == 0)
        components = scan["components"]
        return ValidationReport(
            True, None, components, split_gaps,
            bool(split_gaps) or (components or 0) > 1)

    def is_valid(self) -> bool:
        return self.validation.ok

    @cached_property
    def critical_events(self) -> tuple[MorseEvent, ...]:
        return tuple(ev for ev in self.events if ev.is_critical())

    @cached_property
    def incidence(self) -> StrandIncidence:
        self.validation.raise_if_invalid()
        return StrandIncidence(self._scan["arcs"])

    @cached_property
    def profile(self) -> LevelProfile:
        self.validation.raise_if_invalid()
        counts = tuple(self._scan["counts_after_crit"][:-1])
        crits = self.critical_events
        classes = []
        for g in range(len(counts)):
            below, above = crits[g].kind, crits[g + 1].kind
            if below == CAP and above == CUP:
                classes.append(THIN)
            elif below == CUP and above == CAP:
                classes.append(THICK)
            else:
                classes.append(NEITHER)
        thin_gaps = tuple(g for g, c in enumerate(classes) if c == THIN)
        ladder = WidthLadder(tuple(sorted({counts[g] for g in thin_gaps})))
        return LevelProfile(counts, tuple(classes), sum(counts), thin_gaps, ladder)

    def width(self) -> int:
        return self.profile.width


def validate(pres: MorsePresentation) -> ValidationReport:
    return pres.validation


def level_profile(pres: MorsePresentation) -> LevelProfile:
    return pres.profile


def potentially_alternating(profile: LevelProfile, p_gap: int, side: str) -> list[int]:
    """Thin gaps on one side of thin gap ``p_gap``, nearest first, each strictly
    thinner than every thin gap between it and ``p_gap`` inclusive.

    The returned widths are strictly decreasing with distance from ``p_gap``.
    """
    if profile.gap_classes[p_gap] != THIN:
        raise NotAThinGapError(f"gap {p_gap} is not thin")
    if side == "above":
        candidates = [g for g in profile.thin_gaps if g > p_gap]
    elif side == "below":
        candidates = [g for g in reversed(profile.thin_gaps) if g < p_gap]
    else:
        raise ValueError(f"side must be 'above' or 'below', got {side!r}")
    out = []
    running_min = profile.gap_counts[p_gap]
    for g in candidates:
        w = profile.gap_counts[g]
        if w < running_min:
            out.append(g)
        running_min = min(running_min, w)
    return out


def turbulent(pres: MorsePresentation, g1: int, g2: int) -> bool:
    """True iff every strand crossing into the region between gaps ``g1 < g2``
    has a cup or cap strictly between them.

    Equivalently: no single arc crosses both boundary gaps.
    """
    if not g1 < g2:
        raise BadGapOrderError(f"need g1 < g2, got {g1}, {g2}")
    ngaps = len(pres.profile.gap_counts)
    if not (0 <= g1 and g2 < ngaps):
        raise BadGapOrderError(f"gap out of range: {g1}, {g2} with {ngaps} gaps")
    return not any(a.crosses(g1) and a.crosses(g2) for a in pres.incidence.arcs)
