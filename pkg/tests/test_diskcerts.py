import json

import pytest

from thinpos.core import MorsePresentation, NotAThinGapError, cap, cup
from thinpos.diskcerts import (
    TAG_AT_MOST_N_DISJOINT,
    TAG_HEIGHT_DETERMINES_STRANDS,
    TAG_INTERIORS_MUST_INTERSECT,
    TAG_INTERIORS_MUST_NEST,
    TAG_NESTING_CONTRADICTS_WIDTHS,
    TAG_NO_NESTING_DIRECTION,
    TAG_SAME_HEIGHT_MUST_INTERSECT,
    TAG_SKIPPED_HEIGHT_EXCLUDED,
    VERDICT_DOMINATED_ABOVE,
    VERDICT_DOMINATED_BELOW,
    VERDICT_NARROW_GAP,
    VERDICT_ONE_DISK_ABOVE,
    VERDICT_ONE_DISK_BELOW,
    VERDICT_SANDWICHED,
    VERDICT_SECOND_THINNEST,
    VERDICT_TURBULENT,
    VERDICT_WU,
    BadCertificateError,
    CertFamily,
    DiskCertificate,
    MissingAssertionError,
    MixedSphereOrSideError,
    NoValidHeightError,
    WrongSidesError,
    audit_certificates,
    check_family,
    check_strong_pair,
    disk_height,
    parse_certificates,
    serialize_certificates,
    sphere_report,
)

from conftest import random_presentation


def walk_presentation(gap_counts):
    """Presentation realizing a given gap-count walk with nested cups/caps."""
    events, prev = [], 0
    for c in list(gap_counts) + [0]:
        assert abs(c - prev) == 2
        events.append(cup(0) if c > prev else cap(0))
        prev = c
    return MorsePresentation(events)


# thin gaps at widths 2, 4 and 8 below-to-top; gap 9 (width 8) has ladder
# rank 2 and potentially-alternating gaps [5, 2] on the below side
LADDER3 = walk_presentation([2, 4, 2, 4, 6, 4, 6, 8, 10, 8, 10, 8, 6, 4, 2])
# central thin gap 6 (width 6) with equal-width alternating levels both sides
PAIR_EQ = walk_presentation([2, 4, 6, 4, 6, 8, 6, 8, 6, 4, 6, 4, 2])
# central thin gap 6 (width 6) with A_low at width 2, A_up at width 4
PAIR_DIR = walk_presentation([2, 4, 2, 4, 6, 8, 6, 8, 6, 4, 6, 4, 2])


def below_cert(strands, sphere=9, punctures=(), **kw):
    return DiskCertificate(sphere, "below", frozenset(strands),
                           frozenset(punctures), **kw)


class TestDiskHeight:
    def test_strands_meeting_only_the_sphere(self):
        profile, inc = LADDER3.profile, LADDER3.incidence
        assert disk_height(below_cert({8, 9}), profile, inc) == 1
        assert disk_height(below_cert({10, 11}), profile, inc) == 1

    def test_strands_reaching_the_next_level(self):
        assert disk_height(below_cert({4, 5}), LADDER3.profile,
                           LADDER3.incidence) == 2

    def test_strands_through_the_last_level(self):
        with pytest.raises(NoValidHeightError):
            disk_height(below_cert({0, 1}), LADDER3.profile, LADDER3.incidence)

    def test_strands_missing_the_sphere(self):
        with pytest.raises(NoValidHeightError):
            disk_height(below_cert({12, 13}), LADDER3.profile,
                        LADDER3.incidence)

    def test_not_a_thin_gap(self):
        with pytest.raises(NotAThinGapError):
            disk_height(below_cert({0, 1}, sphere=3), LADDER3.profile,
                        LADDER3.incidence)

    def test_strands_outside_the_region(self):
        with pytest.raises(BadCertificateError):
            disk_height(below_cert({14, 15}), LADDER3.profile,
                        LADDER3.incidence)


class TestCertificateInvariants:
    def test_empty_strands(self):
        with pytest.raises(BadCertificateError):
            DiskCertificate(9, "below", frozenset(), frozenset())

    def test_odd_punctures(self):
        with pytest.raises(BadCertificateError):
            DiskCertificate(9, "below", frozenset({8}), frozenset({0}))

    def test_bad_side(self):
        with pytest.raises(BadCertificateError):
            DiskCertificate(9, "sideways", frozenset({8}), frozenset())


class TestCheckFamily:
    def test_single_certificate_clean(self):
        family = CertFamily((below_cert({8, 9}),), frozenset(), frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        assert report.ok
        assert report.heights == (1,)

    def test_mixed_spheres_rejected(self):
        family = CertFamily(
            (below_cert({8, 9}), below_cert({0, 1}, sphere=5)),
            frozenset(), frozenset())
        with pytest.raises(MixedSphereOrSideError):
            check_family(family, LADDER3.profile, LADDER3.incidence)

    def test_same_height_different_strands(self):
        family = CertFamily((below_cert({8, 9}), below_cert({10, 11})),
                            frozenset(), frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        assert not report.ok
        assert [v.tag for v in report.violations] == \
            [TAG_HEIGHT_DETERMINES_STRANDS]

    def test_different_heights_overlapping_strands(self):
        family = CertFamily((below_cert({8, 9}), below_cert({4, 5, 8, 9})),
                            frozenset(), frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        assert TAG_HEIGHT_DETERMINES_STRANDS in \
            {v.tag for v in report.violations}

    def test_disjoint_same_height_irreducible(self):
        # parallel copies with identical data trip only the intersection rule
        family = CertFamily(
            (below_cert({8, 9}, irreducible=True),
             below_cert({8, 9}, irreducible=True)),
            frozenset({frozenset({0, 1})}), frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        assert [v.tag for v in report.violations] == \
            [TAG_SAME_HEIGHT_MUST_INTERSECT]

    def test_disjoint_bound_exceeded(self):
        certs = (below_cert({8, 9}, irreducible=True),
                 below_cert({10, 11}, irreducible=True),
                 below_cert({4, 5}, irreducible=True))
        pairs = frozenset(frozenset(p) for p in ((0, 1), (0, 2), (1, 2)))
        family = CertFamily(certs, pairs, frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        tags = {v.tag for v in report.violations}
        assert TAG_AT_MOST_N_DISJOINT in tags
        v = next(v for v in report.violations
                 if v.tag == TAG_AT_MOST_N_DISJOINT)
        assert len(v.certs) == 3 and "bound of 2" in v.detail

    def test_bound_not_triggered_at_the_bound(self):
        certs = (below_cert({8, 9}, irreducible=True),
                 below_cert({4, 5}, irreducible=True))
        family = CertFamily(certs, frozenset({frozenset({0, 1})}), frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        assert report.ok

    def test_skipped_height_excluded(self):
        # the height-2 certificate's strands have a cup strictly between the
        # sphere and the first potentially-alternating level, so no
        # irreducible height-1 disk can coexist with it
        family = CertFamily(
            (below_cert({4, 5, 8, 9}), below_cert({10, 11}, irreducible=True)),
            frozenset(), frozenset())
        report = check_family(family, LADDER3.profile, LADDER3.incidence)
        assert [v.tag for v in report.violations] == \
            [TAG_SKIPPED_HEIGHT_EXCLUDED]
        assert report.heights == (2, 1)

    def test_permutation_invariant(self):
        certs = (below_cert({8, 9}, irreducible=True),
                 below_cert({10, 11}, irreducible=True),
                 below_cert({4, 5}, irreducible=True))
        pairs = frozenset(frozenset(p) for p in ((0, 1), (0, 2), (1, 2)))
        a = check_family(CertFamily(certs, pairs, frozenset()),
                         LADDER3.profile, LADDER3.incidence)
        b = check_family(CertFamily(certs[::-1], pairs, frozenset()),
                         LADDER3.profile, LADDER3.incidence)
        assert {v.tag for v in a.violations} == {v.tag for v in b.violations}


def pair_certs(up_punct, low_punct, sphere=6):
    up = DiskCertificate(sphere, "above", frozenset({0}), frozenset(up_punct))
    low = DiskCertificate(sphere, "below", frozenset({0}), frozenset(low_punct))
    return up, low


class TestCheckStrongPair:
    def test_consistent_nesting(self):
        up, low = pair_certs({0, 1}, {0, 1, 2, 3})
        verdict = check_strong_pair(up, low, PAIR_DIR.profile,
                                    boundaries_disjoint=True)
        assert verdict.ok and verdict.applicable
        assert (verdict.a_up, verdict.a_low) == (9, 2)

    def test_disjoint_interiors_rejected(self):
        up, low = pair_certs({0, 1}, {2, 3})
        verdict = check_strong_pair(up, low, PAIR_DIR.profile,
                                    boundaries_disjoint=True)
        assert [v.tag for v in verdict.violations] == \
            [TAG_INTERIORS_MUST_INTERSECT]

    def test_unnested_interiors_rejected(self):
        up, low = pair_certs({0, 1, 2, 3}, {2, 3, 4, 5})
        verdict = check_strong_pair(up, low, PAIR_DIR.profile,
                                    boundaries_disjoint=True)
        assert [v.tag for v in verdict.violations] == [TAG_INTERIORS_MUST_NEST]

    def test_equal_widths_rejected(self):
        up, low = pair_certs({0, 1}, {0, 1, 2, 3})
        verdict = check_strong_pair(up, low, PAIR_EQ.profile,
                                    boundaries_disjoint=True)
        assert [v.tag for v in verdict.violations] == \
            [TAG_NO_NESTING_DIRECTION]

    def test_wrong_nesting_direction_rejected(self):
        up, low = pair_certs({0, 1, 2, 3}, {0, 1})
        verdict = check_strong_pair(up, low, PAIR_DIR.profile,
                                    boundaries_disjoint=True)
        assert [v.tag for v in verdict.violations] == \
            [TAG_NESTING_CONTRADICTS_WIDTHS]

    def test_wrong_sides(self):
        up, low = pair_certs({0, 1}, {0, 1, 2, 3})
        with pytest.raises(WrongSidesError):
            check_strong_pair(low, up, PAIR_DIR.profile,
                              boundaries_disjoint=True)

    def test_missing_assertion(self):
        up, low = pair_certs({0, 1}, {0, 1, 2, 3})
        with pytest.raises(MissingAssertionError):
            check_strong_pair(up, low, PAIR_DIR.profile)

    def test_not_applicable_without_alternating_levels(self):
        up = DiskCertificate(2, "above", frozenset({0}), frozenset())
        low = DiskCertificate(2, "below", frozenset({0}), frozenset())
        verdict = check_strong_pair(up, low, PAIR_DIR.profile,
                                    boundaries_disjoint=True)
        assert verdict.ok and not verdict.applicable


# one circle feeding into the next; the region between the bottom and top
# gaps has no strand running all the way through
CHAIN3 = MorsePresentation(
    [cup(0), cup(2), cap(0), cup(2), cap(0), cap(0)])
CHAIN4 = MorsePresentation(
    [cup(0), cup(2), cap(0), cup(2), cap(0), cup(2), cap(0), cup(2),
     cap(0), cap(0)])


class TestSphereReport:
    def test_thinnest_gap_is_incompressible(self):
        reports = sphere_report(PAIR_DIR)
        assert VERDICT_WU in reports[2].verdicts
        assert VERDICT_WU not in reports[6].verdicts
        assert VERDICT_WU not in reports[9].verdicts

    def test_second_thinnest_verdicts(self):
        reports = sphere_report(PAIR_DIR)
        assert VERDICT_SECOND_THINNEST in reports[9].verdicts
        assert VERDICT_ONE_DISK_ABOVE in reports[9].verdicts
        assert VERDICT_ONE_DISK_BELOW in reports[9].verdicts

    def test_narrow_gap_needs_a_flag(self):
        assert VERDICT_NARROW_GAP not in sphere_report(PAIR_DIR)[9].verdicts
        assert VERDICT_NARROW_GAP in \
            sphere_report(PAIR_DIR, is_knot=True)[9].verdicts
        assert VERDICT_NARROW_GAP in \
            sphere_report(PAIR_DIR, is_prime=True)[9].verdicts

    def test_side_dominance(self):
        reports = sphere_report(PAIR_DIR)
        assert VERDICT_DOMINATED_ABOVE in reports[2].verdicts
        assert VERDICT_DOMINATED_BELOW in reports[2].verdicts
        assert VERDICT_DOMINATED_ABOVE not in reports[6].verdicts

    def test_turbulent_region(self):
        reports = sphere_report(CHAIN3)
        assert list(reports) == [2]
        assert VERDICT_TURBULENT in reports[2].verdicts

    def test_sandwiched_gap(self):
        reports = sphere_report(CHAIN4)
        assert VERDICT_SANDWICHED in reports[4].verdicts
        assert VERDICT_SANDWICHED not in reports[2].verdicts

    def test_disjoint_irreducible_bound_counts_levels(self):
        reports = sphere_report(LADDER3)
        assert reports[9].disjoint_irreducible_bound == \
            {"above": 0, "below": 2}
        assert reports[9].pa_below == (5, 2)

    def test_flags_only_add_verdicts(self, rng):
        for _ in range(50):
            pres = random_presentation(rng, max_events=16)
            plain = sphere_report(pres)
            flagged = sphere_report(pres, is_knot=True, is_prime=True)
            for g, report in plain.items():
                assert set(report.verdicts) <= set(flagged[g].verdicts)


class TestCertificateJson:
    def test_round_trip(self):
        family = CertFamily(
            (below_cert({8, 9}, punctures=(0, 1), irreducible=True),
             below_cert({4, 5})),
            frozenset({frozenset({0, 1})}), frozenset())
        assert parse_certificates(serialize_certificates(family)) == family

    def test_schema_keys(self):
        family = CertFamily((below_cert({8, 9}),), frozenset(), frozenset())
        doc = json.loads(serialize_certificates(family))
        assert set(doc) == \
            {"certificates", "disjoint_disks", "disjoint_boundaries"}
        assert set(doc["certificates"][0]) == \
            {"sphere", "side", "strands", "int_punctures", "irreducible",
             "vertical"}

    def test_bad_json(self):
        with pytest.raises(BadCertificateError):
            parse_certificates("{")
        with pytest.raises(BadCertificateError):
            parse_certificates('{"certificates": [{"side": "above"}]}')


class TestAuditCertificates:
    def test_clean_audit(self):
        family = CertFamily((below_cert({8, 9}),), frozenset(), frozenset())
        audit = audit_certificates(LADDER3, family)
        assert audit["ok"]
        assert audit["families"][0]["heights"] == [1]

    def test_family_violation_surfaces(self):
        family = CertFamily((below_cert({8, 9}), below_cert({10, 11})),
                            frozenset(), frozenset())
        audit = audit_certificates(LADDER3, family)
        assert not audit["ok"]

    def test_strong_pair_violation_surfaces(self):
        up, low = pair_certs({0, 1}, {0, 1, 2, 3})
        family = CertFamily((up, low), frozenset(),
                            frozenset({frozenset({0, 1})}))
        audit = audit_certificates(PAIR_EQ, family)
        assert not audit["ok"]
        assert audit["strong_pairs"][0]["violations"][0]["tag"] == \
            TAG_NO_NESTING_DIRECTION
