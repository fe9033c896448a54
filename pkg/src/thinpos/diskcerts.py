"""Audits of user-asserted compressing-disk certificates, and per-thin-gap
incompressibility reports computed from width data alone.

Nothing here constructs or detects disks.  A certificate records geometric
facts the combinatorial model cannot see (which disk is irreducible, which
pairs are disjoint, which punctures the interior sub-disk encloses); the
module checks those assertions against the necessary conditions that follow
from the level structure, and rejects any family that violates one.  A clean
audit therefore means "consistent", never "exists".

Height bookkeeping: for a thin gap P and a side, the potentially-alternating
gaps on that side are listed nearest-first as A_1 .. A_k, with A_0 := P.  A
certificate has height i when its short-ball strands cross A_{i-1} but not
A_i; strands crossing the last level A_k admit no height at all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import (
    THIN,
    LevelProfile,
    MorsePresentation,
    NotAThinGapError,
    StrandIncidence,
    ThinposError,
    potentially_alternating,
    turbulent,
)


class DiskCertError(ThinposError):
    pass


class NoValidHeightError(DiskCertError):
    pass


class MixedSphereOrSideError(DiskCertError):
    pass


class WrongSidesError(DiskCertError):
    pass


class MissingAssertionError(DiskCertError):
    pass


class BadCertificateError(DiskCertError):
    pass


# violation tags; every rejection cites one of these
TAG_HEIGHT_DETERMINES_STRANDS = "height determines the strand family"
TAG_SAME_HEIGHT_MUST_INTERSECT = "same height must intersect"
TAG_AT_MOST_N_DISJOINT = "at most n disjoint irreducible disks"
TAG_SKIPPED_HEIGHT_EXCLUDED = "skipped height excluded by critical strands"
TAG_INTERIORS_MUST_INTERSECT = "interior disks must intersect"
TAG_INTERIORS_MUST_NEST = "interior disks must be nested"
TAG_NO_NESTING_DIRECTION = "no consistent nesting direction"
TAG_NESTING_CONTRADICTS_WIDTHS = "nesting direction contradicts widths"


@dataclass(frozen=True)
class DiskCertificate:
    """One asserted compressing disk for the thin gap ``sphere``.

    ``strands`` are the arc ids of the short-ball side of the disk;
    ``int_punctures`` are the puncture indices of the sphere enclosed by the
    interior sub-disk.  ``irreducible`` and ``vertical`` are taken on faith.
    """

    sphere: int
    side: str  # above | below
    strands: frozenset[int]
    int_punctures: frozenset[int]
    irreducible: bool = False
    vertical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "strands", frozenset(self.strands))
        object.__setattr__(self, "int_punctures", frozenset(self.int_punctures))
        if self.side not in ("above", "below"):
            raise BadCertificateError(f"side must be above/below, got {self.side!r}")
        if not self.strands:
            raise BadCertificateError("short-ball strand set must be nonempty")
        if len(self.int_punctures) % 2:
            raise BadCertificateError("interior puncture count must be even")


@dataclass(frozen=True)
class CertFamily:
    certificates: tuple[DiskCertificate, ...]
    disjoint_disks: frozenset[frozenset[int]]  # unordered index pairs
    disjoint_boundaries: frozenset[frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "certificates", tuple(self.certificates))
        for attr in ("disjoint_disks", "disjoint_boundaries"):
            pairs = frozenset(frozenset(p) for p in getattr(self, attr))
            for p in pairs:
                if len(p) != 2 or not all(
                        0 <= i < len(self.certificates) for i in p):
                    raise BadCertificateError(f"bad certificate pair {set(p)}")
            object.__setattr__(self, attr, pairs)

    def disks_disjoint(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.disjoint_disks

    def boundaries_disjoint(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.disjoint_boundaries


def _region_arcs(incidence: StrandIncidence, sphere: int, side: str) -> frozenset[int]:
    if side == "above":
        return frozenset(a.arc_id for a in incidence.arcs if a.death > sphere)
    return frozenset(a.arc_id for a in incidence.arcs if a.birth < sphere)


def _check_certificate(cert: DiskCertificate, profile: LevelProfile,
                       incidence: StrandIncidence) -> None:
    if profile.gap_classes[cert.sphere] != THIN:
        raise NotAThinGapError(f"gap {cert.sphere} is not thin")
    region = _region_arcs(incidence, cert.sphere, cert.side)
    if not cert.strands < region:
        raise BadCertificateError(
            f"strands must be a proper subset of the {len(region)} arcs "
            f"{cert.side} gap {cert.sphere}")
    n_punct = profile.gap_counts[cert.sphere]
    if any(not 0 <= p < n_punct for p in cert.int_punctures):
        raise BadCertificateError(
            f"puncture indices must lie in 0..{n_punct - 1}")


def disk_height(cert: DiskCertificate, profile: LevelProfile,
                incidence: StrandIncidence) -> int:
    """The unique i >= 1 such that the certificate's strands cross A_{i-1}
    but not A_i, with A_0 the certified sphere itself."""
    _check_certificate(cert, profile, incidence)
    levels = [cert.sphere] + potentially_alternating(
        profile, cert.sphere, cert.side)
    if not incidence.strands_meet_gap(cert.strands, levels[0]):
        raise NoValidHeightError(
            f"strands do not cross the certified sphere (gap {cert.sphere})")
    for i in range(1, len(levels)):
        if not incidence.strands_meet_gap(cert.strands, levels[i]):
            return i
    raise NoValidHeightError(
        f"strands cross the outermost potentially-alternating gap "
        f"{levels[-1]}; no finite height is consistent")


# -- family audits ----------------------------------------------------------


@dataclass(frozen=True)
class FamilyViolation:
    tag: str
    certs: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    heights: tuple[int, ...]
    violations: tuple[FamilyViolation, ...]

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "heights": list(self.heights),
            "violations": [
                {"tag": v.tag, "certs": list(v.certs), "detail": v.detail}
                for v in self.violations
            ],
        }


def check_family(family: CertFamily, profile: LevelProfile,
                 incidence: StrandIncidence) -> ConsistencyReport:
    """Audit a family of certificates sharing one sphere and side."""
    certs = family.certificates
    if len({(c.sphere, c.side) for c in certs}) > 1:
        raise MixedSphereOrSideError(
            "family audit needs a single sphere and side")
    heights = tuple(disk_height(c, profile, incidence) for c in certs)
    violations: list[FamilyViolation] = []

    for i, j in combinations(range(len(certs)), 2):
        ci, cj = certs[i], certs[j]
        if heights[i] == heights[j]:
            if ci.strands != cj.strands:
                violations.append(FamilyViolation(
                    TAG_HEIGHT_DETERMINES_STRANDS, (i, j),
                    f"both have height {heights[i]} but different strand sets"))
            if (family.disks_disjoint(i, j) and ci.irreducible
                    and cj.irreducible):
                violations.append(FamilyViolation(
                    TAG_SAME_HEIGHT_MUST_INTERSECT, (i, j),
                    f"disjoint irreducible disks of equal height {heights[i]}"))
        elif ci.strands & cj.strands:
            violations.append(FamilyViolation(
                TAG_HEIGHT_DETERMINES_STRANDS, (i, j),
                f"heights {heights[i]} != {heights[j]} but strand sets overlap"))

    if certs:
        bound = profile.rank(certs[0].sphere)
        # distinct irreducible certificates only; identical strand/puncture
        # data is treated as parallel copies of one disk
        distinct: dict[tuple, int] = {}
        for i, c in enumerate(certs):
            if c.irreducible:
                distinct.setdefault((c.strands, c.int_punctures), i)
        idxs = sorted(distinct.values())
        for size in range(len(idxs), bound, -1):
            hit = next(
                (sub for sub in combinations(idxs, size)
                 if all(family.disks_disjoint(i, j)
                        for i, j in combinations(sub, 2))),
                None)
            if hit is not None:
                violations.append(FamilyViolation(
                    TAG_AT_MOST_N_DISJOINT, hit,
                    f"{len(hit)} pairwise-disjoint irreducible disks exceed "
                    f"the bound of {bound} (the sphere's ladder rank)"))
                break

        levels = [certs[0].sphere] + potentially_alternating(
            profile, certs[0].sphere, certs[0].side)
        blocked = set()
        for i, c in enumerate(certs):
            for j in range(1, heights[i]):
                if any(incidence.arc(a).has_critical_between(
                        levels[j - 1], levels[j]) for a in c.strands):
                    blocked.add((j, i))
        for i, c in enumerate(certs):
            if not c.irreducible:
                continue
            for j, blocker in sorted(blocked):
                if heights[i] == j:
                    violations.append(FamilyViolation(
                        TAG_SKIPPED_HEIGHT_EXCLUDED, (blocker, i),
                        f"certificate {blocker} has critical strands between "
                        f"levels {j - 1} and {j}, excluding an irreducible "
                        f"disk of height {j}"))

    return ConsistencyReport(not violations, heights, tuple(violations))


# -- strong (two-sided) pairs ----------------------------------------------


@dataclass(frozen=True)
class NestingVerdict:
    ok: bool
    applicable: bool
    a_up: Optional[int] = None  # gap index of A_u
    a_low: Optional[int] = None
    violations: tuple[FamilyViolation, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "applicable": self.applicable,
            "a_up": self.a_up,
            "a_low": self.a_low,
            "violations": [
                {"tag": v.tag, "certs": list(v.certs), "detail": v.detail}
                for v in self.violations
            ],
        }


def check_strong_pair(up: DiskCertificate, low: DiskCertificate,
                      profile: LevelProfile,
                      boundaries_disjoint: bool = False) -> NestingVerdict:
    """Audit a strongly-compressing pair: an above disk and a below disk with
    disjoint boundary circles on the same sphere.  Their interior sub-disks
    must intersect, nest, and nest in the direction the two alternating-level
    widths dictate."""
    if up.side != "above" or low.side != "below":
        raise WrongSidesError("need one above certificate and one below")
    if up.sphere != low.sphere:
        raise WrongSidesError("certificates are for different spheres")
    if not boundaries_disjoint:
        raise MissingAssertionError(
            "a strong pair requires the disjoint-boundaries assertion")

    pa_above = potentially_alternating(profile, up.sphere, "above")
    pa_below = potentially_alternating(profile, low.sphere, "below")
    if not pa_above or not pa_below:
        return NestingVerdict(True, applicable=False)
    a_up, a_low = pa_above[0], pa_below[0]
    w_up = profile.gap_counts[a_up]
    w_low = profile.gap_counts[a_low]

    violations: list[FamilyViolation] = []
    if not up.int_punctures & low.int_punctures:
        violations.append(FamilyViolation(
            TAG_INTERIORS_MUST_INTERSECT, (0, 1),
            "interior puncture sets are disjoint"))
    elif not (up.int_punctures <= low.int_punctures
              or low.int_punctures <= up.int_punctures):
        violations.append(FamilyViolation(
            TAG_INTERIORS_MUST_NEST, (0, 1),
            "neither interior puncture set contains the other"))
    if w_low == w_up:
        violations.append(FamilyViolation(
            TAG_NO_NESTING_DIRECTION, (0, 1),
            f"both alternating levels have width {w_up}; no nesting "
            f"direction is consistent"))
    elif not violations:
        if w_low < w_up and not up.int_punctures <= low.int_punctures:
            violations.append(FamilyViolation(
                TAG_NESTING_CONTRADICTS_WIDTHS, (0, 1),
                f"w(A_low)={w_low} < w(A_up)={w_up} requires the upper "
                f"interior inside the lower"))
        if w_up < w_low and not low.int_punctures <= up.int_punctures:
            violations.append(FamilyViolation(
                TAG_NESTING_CONTRADICTS_WIDTHS, (0, 1),
                f"w(A_up)={w_up} < w(A_low)={w_low} requires the lower "
                f"interior inside the upper"))
    return NestingVerdict(not violations, True, a_up, a_low, tuple(violations))


# -- per-sphere reports from width data alone -------------------------------


VERDICT_WU = "incompressible (Wu)"
VERDICT_SECOND_THINNEST = "weakly incompressible (second-thinnest)"
VERDICT_ONE_DISK_ABOVE = "at most one compressing disk above (single candidate height)"
VERDICT_ONE_DISK_BELOW = "at most one compressing disk below (single candidate height)"
VERDICT_DOMINATED_ABOVE = "incompressible above (side dominance)"
VERDICT_DOMINATED_BELOW = "incompressible below (side dominance)"
VERDICT_SANDWICHED = "weakly incompressible (sandwiched between one-sided incompressible spheres)"
VERDICT_TURBULENT = "weakly incompressible (thinnest in a turbulent region)"
VERDICT_NO_HEIGHT_ONE_ABOVE = "no height-1 compressing disk above (critical strand re-crosses)"
VERDICT_NARROW_GAP = "incompressible (knot-or-prime, second width = thinnest + 2)"


@dataclass(frozen=True)
class SphereReport:
    gap: int
    width: int
    rank: int
    pa_above: tuple[int, ...]
    pa_below: tuple[int, ...]
    verdicts: tuple[str, ...]

    @property
    def disjoint_irreducible_bound(self) -> dict[str, int]:
        return {"above": len(self.pa_above), "below": len(self.pa_below)}

    def to_json_dict(self) -> dict:
        return {
            "gap": self.gap,
            "width": self.width,
            "rank": self.rank,
            "potentially_alternating": {
                "above": list(self.pa_above), "below": list(self.pa_below)},
            "disjoint_irreducible_bound": self.disjoint_irreducible_bound,
            "verdicts": list(self.verdicts),
        }


def sphere_report(pres: MorsePresentation, is_knot: bool = False,
                  is_prime: bool = False) -> dict[int, SphereReport]:
    """Every incompressibility verdict derivable from the profile (and the
    asserted knot/prime flags) for every thin gap, keyed by gap index."""
    profile = pres.profile
    counts = profile.gap_counts
    ngaps = len(counts)
    ladder = profile.ladder.values
    verdicts: dict[int, list[str]] = {g: [] for g in profile.thin_gaps}

    def add(g: int, verdict: str) -> None:
        if verdict not in verdicts[g]:
            verdicts[g].append(verdict)

    dominated_above, dominated_below = set(), set()
    for g in profile.thin_gaps:
        rank = profile.rank(g)
        if rank == 0:
            add(g, VERDICT_WU)
        if rank == 1:
            add(g, VERDICT_SECOND_THINNEST)
            if len(potentially_alternating(profile, g, "above")) <= 1:
                add(g, VERDICT_ONE_DISK_ABOVE)
            if len(potentially_alternating(profile, g, "below")) <= 1:
                add(g, VERDICT_ONE_DISK_BELOW)
            if len(ladder) >= 2 and ladder[1] == ladder[0] + 2 and \
                    (is_knot or is_prime):
                add(g, VERDICT_NARROW_GAP)
        if all(counts[h] >= counts[g] for h in range(g + 1, ngaps)):
            add(g, VERDICT_DOMINATED_ABOVE)
            dominated_above.add(g)
        if all(counts[h] >= counts[g] for h in range(g)):
            add(g, VERDICT_DOMINATED_BELOW)
            dominated_below.add(g)
        pa_above = potentially_alternating(profile, g, "above")
        if pa_above:
            a1 = pa_above[0]
            if any(a.crosses(a1) and a.has_critical_between(g, a1)
                   for a in pres.incidence.arcs):
                add(g, VERDICT_NO_HEIGHT_ONE_ABOVE)

    def thinnest_between(g1: int, g2: int) -> Optional[int]:
        mids = [g for g in profile.thin_gaps if g1 < g < g2]
        return min(mids, key=lambda g: (counts[g], g)) if mids else None

    for gi in sorted(dominated_above):
        for gk in sorted(dominated_below):
            if gi < gk:
                mid = thinnest_between(gi, gk)
                if mid is not None:
                    add(mid, VERDICT_SANDWICHED)
    for g1 in range(ngaps):
        for g2 in range(g1 + 2, ngaps):
            mid = thinnest_between(g1, g2)
            if mid is not None and turbulent(pres, g1, g2):
                add(mid, VERDICT_TURBULENT)

    return {
        g: SphereReport(
            g, counts[g], profile.rank(g),
            tuple(potentially_alternating(profile, g, "above")),
            tuple(potentially_alternating(profile, g, "below")),
            tuple(verdicts[g]))
        for g in profile.thin_gaps
    }


def report_to_json(reports: dict[int, SphereReport]) -> str:
    return json.dumps(
        {str(g): reports[g].to_json_dict() for g in sorted(reports)},
        indent=2) + "\n"


# -- certificate JSON -------------------------------------------------------


def parse_certificates(text: str) -> CertFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise BadCertificateError(f"bad certificate JSON: {err}") from None
    try:
        certs = tuple(
            DiskCertificate(
                sphere=int(c["sphere"]),
                side=c["side"],
                strands=frozenset(c["strands"]),
                int_punctures=frozenset(c.get("int_punctures", ())),
                irreducible=bool(c.get("irreducible", False)),
                vertical=bool(c.get("vertical", False)),
            ) for c in doc["certificates"])
    except (KeyError, TypeError, ValueError) as err:
        raise BadCertificateError(f"bad certificate entry: {err}") from None
    return CertFamily(
        certs,
        frozenset(frozenset(p) for p in doc.get("disjoint_disks", ())),
        frozenset(frozenset(p) for p in doc.get("disjoint_boundaries", ())))


def serialize_certificates(family: CertFamily) -> str:
    return json.dumps({
        "certificates": [
            {"sphere": c.sphere, "side": c.side,
             "strands": sorted(c.strands),
             "int_punctures": sorted(c.int_punctures),
             "irreducible": c.irreducible, "vertical": c.vertical}
            for c in family.certificates
        ],
        "disjoint_disks": sorted(sorted(p) for p in family.disjoint_disks),
        "disjoint_boundaries": sorted(
            sorted(p) for p in family.disjoint_boundaries),
    }, indent=2) + "\n"


def audit_certificates(pres: MorsePresentation,
                       family: CertFamily) -> dict:
    """Full audit used by the command-line front end: group certificates by
    sphere and side, audit every group, and audit every boundary-disjoint
    above/below pair on a common sphere."""
    profile, incidence = pres.profile, pres.incidence
    groups: dict[tuple[int, str], list[int]] = {}
    for i, c in enumerate(family.certificates):
        groups.setdefault((c.sphere, c.side), []).append(i)

    family_reports = {}
    for (sphere, side), idxs in sorted(groups.items()):
        sub = CertFamily(
            tuple(family.certificates[i] for i in idxs),
            frozenset(
                frozenset(idxs.index(a) for a in p)
                for p in family.disjoint_disks if p <= set(idxs)),
            frozenset(
                frozenset(idxs.index(a) for a in p)
                for p in family.disjoint_boundaries if p <= set(idxs)))
        try:
            entry = check_family(sub, profile, incidence).to_json_dict()
        except DiskCertError as err:
            entry = {"ok": False, "heights": None, "violations": [],
                     "error": str(err)}
        family_reports[(sphere, side)] = (idxs, entry)

    pair_reports = []
    for i, j in combinations(range(len(family.certificates)), 2):
        ci, cj = family.certificates[i], family.certificates[j]
        if ci.sphere != cj.sphere or {ci.side, cj.side} != {"above", "below"}:
            continue
        if not family.boundaries_disjoint(i, j):
            continue
        up, low = (ci, cj) if ci.side == "above" else (cj, ci)
        verdict = check_strong_pair(up, low, profile,
                                    boundaries_disjoint=True)
        pair_reports.append(((i, j), verdict))

    ok = all(entry["ok"] for _, entry in family_reports.values()) and \
        all(v.ok for _, v in pair_reports)
    return {
        "ok": ok,
        "families": [
            {"sphere": sphere, "side": side, "certificates": idxs, **entry}
            for (sphere, side), (idxs, entry) in sorted(family_reports.items())
        ],
        "strong_pairs": [
            {"certificates": list(pair), **verdict.to_json_dict()}
            for pair, verdict in pair_reports
        ],
    }
