"""Two colored critical sequences over a common punctured sphere, their
vertical interleavings, and machine checks of the structural facts that hold
on every width-minimal interleaving.

The model keeps only counts: each color is a sequence of cups (+1) and caps
(-1) above the base sphere, starting from its puncture count.  Planar
positions are irrelevant because the two sides are separated by a vertical
wall, so the two colors can be rearranged vertically independently; an
interleaving fixes one vertical arrangement.

Gap indexing: with ``N`` events total, gap ``t`` (0..N) is the region between
event ``t-1`` and event ``t``; gap 0 sits at the base sphere and gap ``N`` is
the region above everything.  Widths sum the interior gaps 1..N-1 only - the
constant contribution at the base sphere drops out of every comparison.

Relative thin/thick classification uses only one color's events, extended to
boundary gaps: a gap with no events of the color below it is thin for that
color iff the lowest event of the color above it is a cup (or there are none);
symmetrically at the top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .core import ThinposError

ALPHA = "A"
BETA = "B"


class CapExceededError(ThinposError):
    pass


class BadRangeError(ThinposError):
    pass


class ConfigError(ThinposError):
    pass


@dataclass(frozen=True)
class ColorSeq:
    """One side's critical sequence: puncture count on the base sphere plus
    cup (+1) / cap (-1) steps, bottom to top."""

    punctures: int
    steps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.punctures < 2 or self.punctures % 2:
            raise ConfigError(f"punctures must be even and >= 2, got {self.punctures}")
        if any(s not in (1, -1) for s in self.steps):
            raise ConfigError("steps must be +1 (cup) or -1 (cap)")
        count = self.punctures
        for i, s in enumerate(self.steps):
            count += 2 * s
            if count <= 0 and i < len(self.steps) - 1:
                # a zero before the end would strand everything above it in a
                # closed component that never reaches the base sphere
                raise ConfigError(f"strand count exhausted at step {i}")
        if count != 0:
            raise ConfigError(
                f"all arcs must return to the base sphere (final count {count})")

    @cached_property
    def prefix_counts(self) -> tuple[int, ...]:
        """Count after the first k own events, k = 0..len(steps)."""
        counts = [self.punctures]
        for s in self.steps:
            counts.append(counts[-1] + 2 * s)
        return tuple(counts)


@dataclass(frozen=True)
class TwoSidedConfig:
    alpha: ColorSeq
    beta: ColorSeq
    beta_reaches_higher: bool = False  # labeling convention, recorded only

    def size(self) -> int:
        return len(self.alpha.steps) + len(self.beta.steps)


@dataclass(frozen=True)
class Interleaving:
    config: TwoSidedConfig
    pattern: tuple[str, ...]  # over ALPHA/BETA, one entry per event

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        if self.pattern.count(ALPHA) != len(self.config.alpha.steps) or \
                self.pattern.count(BETA) != len(self.config.beta.steps):
            raise ConfigError("pattern does not match the config's step counts")

    def __str__(self) -> str:
        return "".join(self.pattern)

    @property
    def n_events(self) -> int:
        return len(self.pattern)

    @cached_property
    def events(self) -> tuple[tuple[str, int], ...]:
        """(color, step) per event, bottom to top."""
        it = {ALPHA: iter(self.config.alpha.steps),
              BETA: iter(self.config.beta.steps)}
        return tuple((c, next(it[c])) for c in self.pattern)

    @cached_property
    def counts(self) -> dict[str, tuple[int, ...]]:
        """Per color, the strand count at every gap 0..N."""
        out = {}
        for color, seq in ((ALPHA, self.config.alpha), (BETA, self.config.beta)):
            counts = [seq.punctures]
            for c, s in self.events:
                counts.append(counts[-1] + (2 * s if c == color else 0))
            out[color] = tuple(counts)
        return out

    def count(self, color: str, gap: int) -> int:
        return self.counts[color][gap]

    def total(self, gap: int) -> int:
        return self.counts[ALPHA][gap] + self.counts[BETA][gap]

    @cached_property
    def width(self) -> int:
        return sum(self.total(t) for t in range(1, self.n_events))

    # -- relative structure -------------------------------------------------

    def _neighbors(self, color: str, gap: int) -> tuple[Optional[int], Optional[int]]:
        """Steps of the nearest own event below and above the gap."""
        below = next((s for c, s in reversed(self.events[:gap]) if c == color), None)
        above = next((s for c, s in self.events[gap:] if c == color), None)
        return below, above

    def thin_for(self, color: str, gap: int) -> bool:
        below, above = self._neighbors(color, gap)
        if below is None:
            return above is None or above == 1
        if above is None:
            return below == -1
        return below == -1 and above == 1

    def thick_for(self, color: str, gap: int) -> bool:
        below, above = self._neighbors(color, gap)
        return below == 1 and above == -1

    def thin_overall(self, gap: int) -> bool:
        below = self.events[gap - 1][1] if gap > 0 else None
        above = self.events[gap][1] if gap < self.n_events else None
        if below is None:
            return above is None or above == 1
        if above is None:
            return below == -1
        return below == -1 and above == 1

    @cached_property
    def first_gap_above_alpha(self) -> int:
        """The gap just above the highest alpha event; always thin for alpha."""
        last = max(t for t, c in enumerate(self.pattern) if c == ALPHA)
        return last + 1

    @cached_property
    def alternating_gaps(self) -> tuple[int, ...]:
        """Gaps that are thin overall, lie between the base sphere (exclusive)
        and the first thin-for-alpha gap above alpha (inclusive), and whose
        adjacent events belong to different colors."""
        a = self.first_gap_above_alpha
        out = []
        for t in range(1, min(a, self.n_events - 1) + 1):
            if not self.thin_overall(t):
                continue
            if self.pattern[t - 1] != self.pattern[t]:
                out.append(t)
        return tuple(out)

    def relative_structure(self) -> dict:
        """Per-gap classification report."""
        gaps = []
        for t in range(self.n_events + 1):
            gaps.append({
                "alpha": ("thin" if self.thin_for(ALPHA, t)
                          else "thick" if self.thick_for(ALPHA, t) else "neither"),
                "beta": ("thin" if self.thin_for(BETA, t)
                         else "thick" if self.thick_for(BETA, t) else "neither"),
                "total": self.total(t),
                "alternating": t in self.alternating_gaps,
            })
        return {
            "gaps": gaps,
            "first_thin_above_alpha": self.first_gap_above_alpha,
            "alternating": list(self.alternating_gaps),
        }


def minimal_interleavings(
        config: TwoSidedConfig, cap: int = 16) -> tuple[int, list[Interleaving]]:
    """Exhaustively enumerate all interleavings; return the exact minimum
    width and every interleaving achieving it."""
    best = None
    minimal: list[Interleaving] = []
    for inter in all_interleavings(config, cap):
        if best is None or inter.width < best:
            best, minimal = inter.width, [inter]
        elif inter.width == best:
            minimal.append(inter)
    return best, minimal


def all_interleavings(config: TwoSidedConfig, cap: int = 16) -> Iterator[Interleaving]:
    m, n = len(config.alpha.steps), len(config.beta.steps)
    if m + n > cap:
        raise CapExceededError(f"{m + n} events exceeds the cap of {cap}")
    for alpha_slots in combinations(range(m + n), m):
        pattern = [BETA] * (m + n)
        for i in alpha_slots:
            pattern[i] = ALPHA
        yield Interleaving(config, tuple(pattern))


def push_block(inter: Interleaving, color: str, gap_range: tuple[int, int],
               target: str) -> Interleaving:
    """Move every event of one color inside the range just past its boundary,
    preserving the internal order of all events."""
    lo, hi = gap_range
    if not 0 <= lo < hi <= inter.n_events:
        raise BadRangeError(f"bad gap range ({lo}, {hi}) for {inter.n_events} events")
    if target not in ("above", "below"):
        raise BadRangeError(f"target must be 'above' or 'below', got {target!r}")
    inside = list(inter.pattern[lo:hi])
    ours = [c for c in inside if c == color]
    others = [c for c in inside if c != color]
    moved = others + ours if target == "above" else ours + others
    return Interleaving(inter.config,
                        inter.pattern[:lo] + tuple(moved) + inter.pattern[hi:])


# -- lemma checks ----------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    counterexample: Optional[str] = None  # interleaving pattern
    detail: Optional[str] = None


LEMMA_KEYS = (
    "thick-levels-disjoint",      # a thick gap for one color is thin for the
                                  # other, and the other color is silent
                                  # across the surrounding thin-for levels
    "alternating-below-bound",    # per-color count at an alternating gap is
                                  # below every gap under it, unless product
    "alternating-monotone",       # alternating totals beat everything below
                                  # and decrease going up
    "product-between-alternating",  # one color is silent between adjacent
                                    # alternating gaps (and below the lowest)
)


def check_thick_levels(inter: Interleaving) -> Optional[str]:
    for color in (ALPHA, BETA):
        other = BETA if color == ALPHA else ALPHA
        for t in range(inter.n_events + 1):
            if not inter.thick_for(color, t):
                continue
            s_minus = next((s for s in range(t - 1, -1, -1)
                            if inter.thin_for(color, s)), None)
            s_plus = next((s for s in range(t + 1, inter.n_events + 1)
                           if inter.thin_for(color, s)), None)
            if s_minus is None or s_plus is None:
                return (f"thick-for-{color} gap {t} has no surrounding "
                        f"thin-for-{color} gaps")
            if any(c == other for c, _ in inter.events[s_minus:s_plus]):
                return (f"{other} has events between the thin-for-{color} "
                        f"gaps {s_minus} and {s_plus} around thick gap {t}")
            if not inter.thin_for(other, t):
                return f"thick-for-{color} gap {t} is not thin for {other}"
    return None


def check_alternating_bound(inter: Interleaving) -> Optional[str]:
    for c in inter.alternating_gaps:
        for s in range(c):
            for color in (ALPHA, BETA):
                if not any(col == color for col, _ in inter.events[s:c]):
                    continue  # product between s and c
                if not inter.count(color, c) < inter.count(color, s):
                    return (f"alternating gap {c} has {color} count "
                            f"{inter.count(color, c)} >= gap {s} count "
                            f"{inter.count(color, s)} without a product")
    return None


def check_alternating_monotone(inter: Interleaving) -> Optional[str]:
    alts = inter.alternating_gaps
    for c in alts:
        for s in range(c):
            if inter.total(c) >= inter.total(s):
                return (f"alternating gap {c} (total {inter.total(c)}) is not "
                        f"below gap {s} (total {inter.total(s)})")
    for lo, hi in zip(alts, alts[1:]):
        if inter.total(hi) >= inter.total(lo):
            return f"alternating totals not decreasing: gaps {lo}, {hi}"
    return None


def check_product_regions(inter: Interleaving) -> Optional[str]:
    alts = inter.alternating_gaps
    for lo, hi in zip(alts, alts[1:]):
        colors = {c for c, _ in inter.events[lo:hi]}
        if ALPHA in colors and BETA in colors:
            return (f"both colors have events between alternating gaps "
                    f"{lo} and {hi}")
    return None


_CHECKS = {
    "thick-levels-disjoint": check_thick_levels,
    "alternating-below-bound": check_alternating_bound,
    "alternating-monotone": check_alternating_monotone,
    "product-between-alternating": check_product_regions,
}


@dataclass
class OracleReport:
    config: TwoSidedConfig
    n_interleavings: int
    min_width: int
    minimal_patterns: tuple[str, ...]
    verdicts: dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    def to_json_dict(self) -> dict:
        return {
            "config": serialize_config(self.config),
            "interleavings": self.n_interleavings,
            "min_width": self.min_width,
            "minimal": list(self.minimal_patterns),
            "verdicts": {
                key: {"ok": v.ok, "counterexample": v.counterexample,
                      "detail": v.detail}
                for key, v in self.verdicts.items()
            },
        }


def check_interleaving(inter: Interleaving) -> dict[str, Optional[str]]:
    """Run every lemma check on a single interleaving; values are failure
    details (None = passed)."""
    return {key: fn(inter) for key, fn in _CHECKS.items()}


def verify_paper_lemmas(config: TwoSidedConfig, cap: int = 16) -> OracleReport:
    """Check every width-minimal interleaving of the config against all the
    structural facts; any violation is returned with its witness."""
    n = 0
    best = None
    minimal: list[Interleaving] = []
    for inter in all_interleavings(config, cap):
        n += 1
        if best is None or inter.width < best:
            best, minimal = inter.width, [inter]
        elif inter.width == best:
            minimal.append(inter)
    verdicts = {key: CheckResult(True) for key in _CHECKS}
    for inter in minimal:
        for key, detail in check_interleaving(inter).items():
            if detail is not None and verdicts[key].ok:
                verdicts[key] = CheckResult(False, str(inter), detail)
    return OracleReport(config, n, best, tuple(str(i) for i in minimal), verdicts)


# -- config text form ------------------------------------------------------


def _steps_text(steps: Iterable[int]) -> str:
    return " ".join("+" if s > 0 else "-" for s in steps)


def serialize_config(config: TwoSidedConfig) -> str:
    return (f"alpha: {config.alpha.punctures} | {_steps_text(config.alpha.steps)}\n"
            f"beta: {config.beta.punctures} | {_steps_text(config.beta.steps)}\n")


def parse_config(text: str) -> TwoSidedConfig:
    sides: dict[str, ColorSeq] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            name, rest = line.split(":", 1)
            punct_text, steps_text = rest.split("|", 1)
        except ValueError:
            raise ConfigError(f"bad config line {line!r}") from None
        name = name.strip().lower()
        if name not in ("alpha", "beta"):
            raise ConfigError(f"unknown side {name!r}")
        if name in sides:
            raise ConfigError(f"duplicate side {name!r}")
        steps = []
        for tok in steps_text.split():
            if tok == "+":
                steps.append(1)
            elif tok == "-":
                steps.append(-1)
            else:
                raise ConfigError(f"bad step token {tok!r}")
        sides[name] = ColorSeq(int(punct_text.strip()), tuple(steps))
    if set(sides) != {"alpha", "beta"}:
        raise ConfigError("config must define exactly alpha and beta")
    return TwoSidedConfig(sides["alpha"], sides["beta"])


# -- sweeps ----------------------------------------------------------------


def valid_color_seqs(length: int, punctures: int) -> Iterator[ColorSeq]:
    """All step sequences of the given length that keep the count nonnegative
    and return to zero."""
    def rec(prefix: list[int], count: int):
        remaining = length - len(prefix)
        if remaining == 0:
            if count == 0:
                yield ColorSeq(punctures, tuple(prefix))
            return
        # prune: need enough caps left to come back down
        if count > 2 * remaining:
            return
        for s in (1, -1):
            nxt = count + 2 * s
            if nxt < 0 or (nxt == 0 and remaining > 1):
                continue
            prefix.append(s)
            yield from rec(prefix, nxt)
            prefix.pop()
    yield from rec([], punctures)


def sweep_configs(max_events: int,
                  punctures: Iterable[int] = (2, 4)) -> Iterator[TwoSidedConfig]:
    punctures = tuple(punctures)
    for m in range(1, max_events):
        for n in range(1, max_events - m + 1):
            for pa in punctures:
                for pb in punctures:
                    for alpha in valid_color_seqs(m, pa):
                        for beta in valid_color_seqs(n, pb):
                            yield TwoSidedConfig(alpha, beta)


def run_sweep(max_events: int, punctures: Iterable[int] = (2, 4),
              cap: int = 16) -> tuple[int, list[OracleReport]]:
    """Verify every config in the sweep; returns (config count, violations)."""
    n = 0
    violations = []
    for config in sweep_configs(max_events, punctures):
        n += 1
        report = verify_paper_lemmas(config, cap)
        if not report.ok:
            violations.append(report)
    return n, violations


def sweep_report_json(n_configs: int, violations: list[OracleReport]) -> str:
    return json.dumps({
        "configs": n_configs,
        "violations": [r.to_json_dict() for r in violations],
    }, indent=2) + "\n"
