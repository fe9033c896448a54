"""Text, JSON, and CSV serialization for presentations and profiles.

Grammar: one event per non-empty line; tokens ``cup <i>``, ``cap <i>``,
``x+ <i>``, ``x- <i>``; ``#`` starts a comment running to end of line;
leading/trailing whitespace is ignored; events are ordered bottom to top.

The canonical serialized form is lowercase tokens separated by a single
space, one event per line, newline-terminated, comments dropped.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

from .core import (
    EVENT_KINDS,
    LevelProfile,
    MorseEvent,
    MorsePresentation,
    ThinposError,
    validate,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int  # 1-based
    column: int  # 1-based

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(ThinposError):
    def __init__(self, message: str, span: SourceSpan):
        self.span = span
        super().__init__(f"{span}: {message}")


class MorseSyntaxError(ParseError):
    pass


class SemanticError(ParseError):
    """The text parsed, but the event sequence fails validation."""


def parse(text: str) -> MorsePresentation:
    events: list[MorseEvent] = []
    spans: list[SourceSpan] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        column = line.index(stripped[0]) + 1
        span = SourceSpan(lineno, column)
        tokens = stripped.split()
        if len(tokens) != 2:
            raise MorseSyntaxError(
                f"expected '<kind> <position>', got {stripped!r}", span)
        kind, pos_text = tokens
        if kind not in EVENT_KINDS:
            raise MorseSyntaxError(f"unknown event kind {kind!r}", span)
        try:
            pos = int(pos_text)
        except ValueError:
            raise MorseSyntaxError(f"bad position {pos_text!r}", span) from None
        if pos < 0:
            raise MorseSyntaxError(f"negative position {pos}", span)
        events.append(MorseEvent(kind, pos))
        spans.append(span)

    pres = MorsePresentation(events)
    report = validate(pres)
    if not report.ok:
        v = report.violation
        span = spans[v.event_index] if v.event_index < len(spans) else (
            spans[-1] if spans else SourceSpan(1, 1))
        raise SemanticError(str(v), span)
    return pres


def serialize(pres: MorsePresentation) -> str:
    validate(pres).raise_if_invalid()
    return "".join(f"{ev.kind} {ev.pos}\n" for ev in pres.events)


def profile_to_json(profile: LevelProfile) -> str:
    """Stable-key-order JSON for a level profile."""
    doc = {
        "gaps": [
            {"count": c, "class": cls}
            for c, cls in zip(profile.gap_counts, profile.gap_classes)
        ],
        "width": profile.width,
        "ladder": list(profile.ladder.values),
    }
    return json.dumps(doc, indent=2) + "\n"


def profile_to_csv(profile: LevelProfile) -> str:
    out = io.StringIO()
    out.write("gap_index,count,class\n")
    for g, (c, cls) in enumerate(zip(profile.gap_counts, profile.gap_classes)):
        out.write(f"{g},{c},{cls}\n")
    return out.getvalue()
