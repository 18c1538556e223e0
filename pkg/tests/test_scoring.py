"""Penalty totals, raw/calibrated scores, and ratings."""

import random
from dataclasses import replace
from fractions import Fraction

import pytest

from mqmkit.annotation import ErrorCountCell, EvaluationSample, merge_samples
from mqmkit.errors import UnknownErrorTypeError, UnknownSeverityError
from mqmkit.model import (
    ErrorTypeNode,
    MetricSpec,
    SeveritySystem,
    default_severity_system,
)
from mqmkit.scoring import (
    calibrated_score,
    critical_error_count,
    error_type_penalty_total,
    penalty_breakdown,
    rate,
    raw_score,
    scaling_factor,
    score_report_to_doc,
    score_sample,
)


def make_spec(**overrides) -> MetricSpec:
    base = dict(
        id="m1",
        typology=(
            ErrorTypeNode(id="accuracy", name="Accuracy"),
            ErrorTypeNode(id="style", name="Style"),
        ),
        severity=default_severity_system(),
        pt=Fraction(85),
        app=Fraction(20),
    )
    base.update(overrides)
    return MetricSpec(**base)


def sample_with(cells, ewc=1000, sample_id="s1") -> EvaluationSample:
    return EvaluationSample(id=sample_id, ewc=ewc, cells=tuple(cells))


class TestErrorTypePenaltyTotal:
    # oracle: (sum of count * multiplier) * weight, by hand

    def test_minor3_major1_weight1_is_8(self):
        cells = [ErrorCountCell("a", "Minor", 3), ErrorCountCell("a", "Major", 1)]
        assert error_type_penalty_total(cells, default_severity_system(), 1) == 8

    def test_weight_doubles_total(self):
        cells = [ErrorCountCell("a", "Minor", 3), ErrorCountCell("a", "Major", 1)]
        assert error_type_penalty_total(cells, default_severity_system(), 2) == 16

    def test_neutral_counts_are_free(self):
        cells = [ErrorCountCell("a", "Neutral", 7)]
        assert error_type_penalty_total(cells, default_severity_system(), 1) == 0

    def test_unknown_severity_raises(self):
        cells = [ErrorCountCell("a", "Blocker", 1)]
        with pytest.raises(UnknownSeverityError):
            error_type_penalty_total(cells, default_severity_system(), 1)


class TestPenaltyBreakdown:
    def test_walkthrough_npt_15_6(self):
        # apt 39 on 2500 words normalizes to 15.6 penalty points per 1000
        sample = sample_with(
            [ErrorCountCell("accuracy", "Minor", 4), ErrorCountCell("accuracy", "Major", 7)],
            ewc=2500,
        )
        breakdown = penalty_breakdown(sample, make_spec())
        assert breakdown.apt == 39
        assert breakdown.pwpt == Fraction(39, 2500)
        assert breakdown.npt == Fraction("15.6")

    def test_zero_errors(self):
        breakdown = penalty_breakdown(sample_with([]), make_spec())
        assert breakdown.apt == 0
        assert breakdown.pwpt == 0
        assert breakdown.npt == 0

    def test_npt_is_apt_rwc_over_ewc(self):
        # oracle: (10 * 1000) / 2000 = 5
        sample = sample_with([ErrorCountCell("accuracy", "Minor", 10)], ewc=2000)
        breakdown = penalty_breakdown(sample, make_spec())
        assert breakdown.apt == 10
        assert breakdown.npt == 5

    def test_apt_is_sum_of_etpt(self):
        sample = sample_with(
            [ErrorCountCell("accuracy", "Major", 2), ErrorCountCell("style", "Minor", 3)]
        )
        breakdown = penalty_breakdown(sample, make_spec())
        assert breakdown.apt == sum(breakdown.etpt_by_type.values())
        assert breakdown.etpt_by_type == {"accuracy": 10, "style": 3}

    def test_unknown_error_type_raises(self):
        sample = sample_with([ErrorCountCell("fluff", "Minor", 1)])
        with pytest.raises(UnknownErrorTypeError):
            penalty_breakdown(sample, make_spec())

    def test_weights_scale_etpt(self):
        spec = make_spec(
            typology=(
                ErrorTypeNode(id="accuracy", name="Accuracy", weight=Fraction(2)),
                ErrorTypeNode(id="style", name="Style"),
            )
        )
        sample = sample_with([ErrorCountCell("accuracy", "Minor", 3)])
        assert penalty_breakdown(sample, spec).apt == 6


def breakdown_for_npt(npt, spec):
    """Fabricate a breakdown with an exact normed penalty total."""
    npt = Fraction(npt)
    apt = npt * 1000 / spec.rwc
    from mqmkit.scoring import PenaltyBreakdown

    return PenaltyBreakdown(
        etpt_by_type={"accuracy": apt}, apt=apt, pwpt=apt / 1000, npt=npt
    )


class TestRawScore:
    def test_npt_15_6_gives_98_44(self):
        spec = make_spec()
        assert float(raw_score(breakdown_for_npt("15.6", spec), spec)) == 98.44

    def test_npt_10_gives_99(self):
        spec = make_spec()
        assert raw_score(breakdown_for_npt(10, spec), spec) == 99

    def test_error_free_scores_msv(self):
        spec = make_spec()
        assert raw_score(breakdown_for_npt(0, spec), spec) == 100

    def test_negative_when_pwpt_above_one(self):
        spec = make_spec()
        sample = sample_with([ErrorCountCell("accuracy", "Critical", 100)], ewc=100)
        breakdown = penalty_breakdown(sample, spec)
        assert raw_score(breakdown, spec) < 0  # reported, not clamped


class TestScalingFactor:
    def test_paper_value_three_quarters(self):
        assert scaling_factor(make_spec()) == Fraction(3, 4)

    def test_identity_when_dpi_equals_app(self):
        assert scaling_factor(make_spec(pt=Fraction(80))) == 1

    def test_magnifying_ratio(self):
        assert scaling_factor(make_spec(pt=Fraction(90), app=Fraction(5))) == 2


class TestCalibratedScore:
    def test_walkthrough_88_3(self):
        spec = make_spec()
        value = calibrated_score(breakdown_for_npt("15.6", spec), spec)
        assert abs(float(value) - 88.3) < 1e-9
        assert value == Fraction("88.3")

    def test_budget_boundary_lands_on_pt(self):
        spec = make_spec()
        assert calibrated_score(breakdown_for_npt(20, spec), spec) == spec.pt

    def test_error_free_scores_msv(self):
        spec = make_spec()
        assert calibrated_score(breakdown_for_npt(0, spec), spec) == 100

    def test_pt90_app10_anchor(self):
        # a normed total of exactly 10 must land on the 90 threshold
        spec = make_spec(pt=Fraction(90), app=Fraction(10))
        assert calibrated_score(breakdown_for_npt(10, spec), spec) == 90

    def test_affine_in_npt_with_slope_minus_sf(self):
        spec = make_spec()
        sf = scaling_factor(spec)
        step = Fraction(1, 7)
        previous = calibrated_score(breakdown_for_npt(0, spec), spec)
        for i in range(1, 50):
            current = calibrated_score(breakdown_for_npt(i * step, spec), spec)
            assert (current - previous) / step == -sf  # finite difference
            previous = current


class TestRate:
    def test_walkthrough_passes(self):
        assert rate(Fraction("88.3"), make_spec(), 0) == "PASS"

    def test_exactly_at_threshold_passes(self):
        spec = make_spec()
        assert rate(spec.pt, spec, 0) == "PASS"

    def test_below_threshold_fails(self):
        spec = make_spec()
        assert rate(spec.pt - Fraction(1, 10**9), spec, 0) == "FAIL"

    def test_critical_override_fails_high_score(self):
        severity = SeveritySystem(
            levels=default_severity_system().levels, critical_auto_fail=True
        )
        spec = make_spec(severity=severity)
        assert rate(Fraction("99.9"), spec, critical_count=1) == "FAIL"

    def test_override_off_by_default(self):
        assert rate(Fraction("99.9"), make_spec(), critical_count=1) == "PASS"


def random_spec(rng) -> MetricSpec:
    msv = Fraction(rng.randint(50, 2000), 10)
    pt = msv * Fraction(rng.randint(0, 99), 100)
    return make_spec(
        msv=msv,
        pt=pt,
        app=Fraction(rng.randint(1, 600), 10),
        rwc=rng.choice([250, 500, 1000, 2000]),
        typology=(
            ErrorTypeNode(id="accuracy", name="Accuracy", weight=Fraction(rng.randint(1, 30), 10)),
            ErrorTypeNode(id="style", name="Style"),
        ),
    )


def random_sample(rng, sample_id="r") -> EvaluationSample:
    cells = []
    for type_id in ("accuracy", "style"):
        for severity in ("Neutral", "Minor", "Major", "Critical"):
            if rng.random() < 0.4:
                cells.append(ErrorCountCell(type_id, severity, rng.randint(0, 12)))
    return EvaluationSample(id=sample_id, ewc=rng.randint(1, 20000), cells=tuple(cells))


class TestScoringProperties:
    def test_more_errors_never_raise_scores(self):
        rng = random.Random(11)
        for _ in range(300):
            spec = random_spec(rng)
            sample = random_sample(rng)
            extra = ErrorCountCell("accuracy", "Major", rng.randint(1, 4))
            bumped_cells = []
            merged = False
            for cell in sample.cells:
                if (cell.error_type_id, cell.severity_name) == ("accuracy", "Major"):
                    bumped_cells.append(replace(cell, count=cell.count + extra.count))
                    merged = True
                else:
                    bumped_cells.append(cell)
            if not merged:
                bumped_cells.append(extra)
            bumped = replace(sample, cells=tuple(bumped_cells))
            b0, b1 = penalty_breakdown(sample, spec), penalty_breakdown(bumped, spec)
            assert b1.apt >= b0.apt
            assert raw_score(b1, spec) <= raw_score(b0, spec)
            assert calibrated_score(b1, spec) <= calibrated_score(b0, spec)

    def test_weight_scaling_scales_apt_exactly(self):
        rng = random.Random(13)
        for _ in range(200):
            spec = random_spec(rng)
            sample = random_sample(rng)
            k = Fraction(rng.randint(1, 50), 10)
            scaled = replace(
                spec,
                typology=tuple(replace(n, weight=n.weight * k) for n in spec.typology),
            )
            assert penalty_breakdown(sample, scaled).apt == k * penalty_breakdown(sample, spec).apt

    def test_merge_additivity_and_betweenness(self):
        rng = random.Random(17)
        for _ in range(200):
            spec = random_spec(rng)
            s1, s2 = random_sample(rng, "a"), random_sample(rng, "b")
            merged = merge_samples([s1, s2])
            b1, b2, bm = (penalty_breakdown(s, spec) for s in (s1, s2, merged))
            assert bm.apt == b1.apt + b2.apt
            assert merged.ewc == s1.ewc + s2.ewc
            r1, r2, rm = (raw_score(b, spec) for b in (b1, b2, bm))
            assert min(r1, r2) <= rm <= max(r1, r2)  # pwpt is a weighted mean

    def test_raw_pass_iff_calibrated_pass(self):
        rng = random.Random(19)
        for _ in range(500):
            spec = random_spec(rng)
            sample = random_sample(rng)
            breakdown = penalty_breakdown(sample, spec)
            assert (breakdown.npt <= spec.app) == (calibrated_score(breakdown, spec) >= spec.pt)


class TestScoreSample:
    def test_report_carries_all_intermediates(self):
        spec = make_spec()
        sample = sample_with(
            [ErrorCountCell("accuracy", "Minor", 4), ErrorCountCell("accuracy", "Major", 7)],
            ewc=2500,
        )
        report = score_sample(sample, spec, model="calibrated")
        doc = score_report_to_doc(report)
        assert doc["breakdown"]["npt"] == 15.6
        assert doc["sf"] == 0.75
        assert doc["raw_score"] == 98.44
        assert doc["calibrated_score"] == 88.3
        assert doc["rating"] == "PASS"
        assert doc["model_used"] == "CALIBRATED"
        assert doc["rounded"]["calibrated_score"] == 88.3

    def test_auto_small_sample_yields_guidance_not_scores(self):
        spec = make_spec()
        sample = sample_with([ErrorCountCell("accuracy", "Minor", 1)], ewc=250)
        report = score_sample(sample, spec, model="auto")
        assert report.selection.method == "SQC"
        assert report.model_used is None
        assert report.rating is None
        assert any("sampling" in w for w in report.warnings)

    def test_explicit_model_overrides_router_with_warning(self):
        spec = make_spec()
        sample = sample_with([ErrorCountCell("accuracy", "Minor", 1)], ewc=250)
        report = score_sample(sample, spec, model="raw")
        assert report.model_used == "RAW"
        assert report.rating == "PASS"
        assert any("router recommends" in w for w in report.warnings)

    def test_raw_model_rating_uses_app_budget(self):
        spec = make_spec()  # app 20
        over = sample_with([ErrorCountCell("accuracy", "Minor", 21)], ewc=1000)
        under = sample_with([ErrorCountCell("accuracy", "Minor", 20)], ewc=1000)
        assert score_sample(over, spec, model="raw").rating == "FAIL"
        assert score_sample(under, spec, model="raw").rating == "PASS"

    def test_critical_count_counts_last_level(self):
        spec = make_spec()
        sample = sample_with(
            [ErrorCountCell("accuracy", "Critical", 2), ErrorCountCell("style", "Minor", 1)]
        )
        assert critical_error_count(sample, spec) == 2

    def test_rounding_is_half_away_from_zero(self):
        spec = make_spec(
            typology=(ErrorTypeNode(id="accuracy", name="A", weight=Fraction(1, 8)),),
        )
        # apt = 0.125, npt = 0.125, raw = 100 - 0.0125 = 99.9875 -> 99.99
        sample = sample_with([ErrorCountCell("accuracy", "Minor", 1)], ewc=1000)
        doc = score_report_to_doc(score_sample(sample, spec, model="raw"))
        assert doc["rounded"]["raw_score"] == 99.99

    def test_invalid_metric_rejected(self):
        from mqmkit.model import MetricValidationError

        spec = make_spec(pt=Fraction(100))
        with pytest.raises(MetricValidationError):
            score_sample(sample_with([]), spec)

    def test_unknown_model_name_rejected(self):
        with pytest.raises(ValueError, match="model must be one of"):
            score_sample(sample_with([]), make_spec(), model="fancy")

    def test_raw_model_critical_override(self):
        severity = SeveritySystem(
            levels=default_severity_system().levels, critical_auto_fail=True
        )
        # budget generous enough that only the override can fail it
        spec = make_spec(severity=severity, app=Fraction(100))
        sample = sample_with([ErrorCountCell("accuracy", "Critical", 1)])
        report = score_sample(sample, spec, model="raw")
        assert report.breakdown.npt <= spec.app
        assert report.rating == "FAIL"

    def test_negative_score_reported_with_warning(self):
        spec = make_spec()
        sample = sample_with([ErrorCountCell("accuracy", "Critical", 50)], ewc=100)
        report = score_sample(sample, spec, model="raw")
        assert report.raw_score < 0
        assert any("negative" in w for w in report.warnings)
