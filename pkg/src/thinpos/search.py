"""Width minimization over the move graph.

All strategies return an upper bound on the width: the move set contains only
vertical exchanges and zigzag cancellations, so reachability certifies
"no thinner presentation found", never thin position itself.

* ``exhaustive``: breadth-first over canonical presentation states (canonical
  serialized text is the deduplication key), up to a budget of expanded
  states; returns the minimum over the explored component.
* ``greedy``: repeatedly applies the best negative-delta move, ties broken by
  smallest index, and stops at a local minimum.
* ``anneal``: Metropolis over the enumerated moves with a geometric
  temperature schedule; deterministic for a fixed seed.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .core import MorsePresentation, ThinposError, validate
from .moves import Move, MoveError, MoveTrace, TraceStep, enumerate_moves
from .textio import serialize


class BudgetExhaustedError(ThinposError):
    """Raised only internally; search returns best-so-far with a flag instead."""


@dataclass(frozen=True)
class SearchParams:
    strategy: str = "exhaustive"  # exhaustive | greedy | anneal
    budget: int = 100_000
    seed: int = 0
    initial_temperature: float = 4.0
    decay: float = 0.995

    def __post_init__(self):
        if self.strategy not in ("exhaustive", "greedy", "anneal"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if not 0.0 < self.decay < 1.0:
            raise ValueError("decay must lie in (0, 1)")


@dataclass(frozen=True)
class SearchResult:
    best: MorsePresentation
    best_width: int
    trace: MoveTrace
    budget_exhausted: bool = False
    states_expanded: int = 0


def search(pres: MorsePresentation, params: SearchParams) -> SearchResult:
    validate(pres).raise_if_invalid()
    if params.strategy == "exhaustive":
        return _search_exhaustive(pres, params)
    if params.strategy == "greedy":
        return _search_greedy(pres)
    return _search_anneal(pres, params)


def _search_exhaustive(pres: MorsePresentation, params: SearchParams) -> SearchResult:
    start_key = serialize(pres)
    seen = {start_key}
    # queue holds (presentation, move path); paths stay short at desk scale
    queue = deque([(pres, ())])
    best, best_path = pres, ()
    expanded = 0
    exhausted = False
    while queue:
        if expanded >= params.budget:
            exhausted = True
            break
        cur, path = queue.popleft()
        expanded += 1
        if cur.width() < best.width():
            best, best_path = cur, path
        for m in enumerate_moves(cur):
            nxt = m.apply(cur)
            key = serialize(nxt)
            if key not in seen:
                seen.add(key)
                queue.append((nxt, path + (m,)))
    steps = _steps_for(pres, best_path)
    return SearchResult(best, best.width(), MoveTrace(steps), exhausted, expanded)


def _search_greedy(pres: MorsePresentation) -> SearchResult:
    cur = pres
    steps: list[TraceStep] = []
    while True:
        moves = [m for m in enumerate_moves(cur) if m.delta < 0]
        if not moves:
            break
        m = min(moves, key=lambda m: (m.delta, m.index, m.kind))
        cur = m.apply(cur)
        steps.append(TraceStep(m.kind, m.index, cur.width()))
    return SearchResult(cur, cur.width(), MoveTrace(tuple(steps)),
                        states_expanded=len(steps))


def _search_anneal(pres: MorsePresentation, params: SearchParams) -> SearchResult:
    rng = random.Random(params.seed)
    temperature = params.initial_temperature
    cur = pres
    path: list[Move] = []
    best, best_len = pres, 0
    for _ in range(params.budget):
        moves = enumerate_moves(cur)
        if not moves:
            break
        m = rng.choice(moves)
        accept = m.delta <= 0 or rng.random() < math.exp(-m.delta / max(temperature, 1e-9))
        if accept:
            cur = m.apply(cur)
            path.append(m)
            if cur.width() < best.width():
                best, best_len = cur, len(path)
        temperature *= params.decay
    steps = _steps_for(pres, tuple(path[:best_len]))
    return SearchResult(best, best.width(), MoveTrace(steps),
                        states_expanded=len(path))


def _steps_for(pres: MorsePresentation, path: tuple[Move, ...]) -> tuple[TraceStep, ...]:
    steps = []
    cur = pres
    for m in path:
        cur = m.apply(cur)
        steps.append(TraceStep(m.kind, m.index, cur.width()))
    return tuple(steps)


@dataclass(frozen=True)
class TraceVerdict:
    ok: bool
    failed_step: int | None = None
    reason: str | None = None


def verify_trace(pres: MorsePresentation, trace: MoveTrace) -> TraceVerdict:
    """Replay a trace: every step must be legal and every recorded width must
    match recomputation."""
    cur = pres
    for i, step in enumerate(trace.steps):
        try:
            cur = Move(step.kind, step.index, 0).apply(cur)
        except (MoveError, ThinposError) as err:
            return TraceVerdict(False, i, f"illegal move: {err}")
        if cur.width() != step.width_after:
            return TraceVerdict(
                False, i,
                f"recorded width {step.width_after}, recomputed {cur.width()}")
    return TraceVerdict(True)
