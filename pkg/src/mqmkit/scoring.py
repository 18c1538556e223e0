"""Penalty totals and the three quality scores.

The arithmetic chain, per sample and metric:

    etpt (per type) = sum(count * severity multiplier) * type weight
    apt             = sum of all etpt
    pwpt            = apt / ewc
    npt             = pwpt * rwc                  (= apt * rwc / ewc)
    raw             = msv * (1 - pwpt)
    sf              = (msv - pt) / app
    calibrated      = msv - npt * sf
    nonlinear       = msv - (apt / T(ewc)) * (msv - pt)

Everything up to `calibrated` is exact rational arithmetic, so the
identity "npt <= app iff calibrated >= pt" holds with no tolerance and
a sample exactly on the budget lands exactly on the passing threshold.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .annotation import ErrorCountCell, EvaluationSample
from .model import MetricSpec, SeveritySystem, ensure_valid
from .numeric import as_fraction, doc_number, round_half_away
from .routing import DEFAULT_TANGENT_WINDOW, MethodSelection, select_method, selection_to_doc
from .tolerance import nonlinear_score

ModelName = Literal["RAW", "CALIBRATED", "NONLINEAR"]
Rating = Literal["PASS", "FAIL"]

MODEL_CHOICES = ("raw", "calibrated", "nonlinear", "auto")


@dataclass(frozen=True)
class PenaltyBreakdown:
    """All intermediate penalty totals, unrounded."""

    etpt_by_type: dict
    apt: Fraction
    pwpt: Fraction
    npt: Fraction


@dataclass(frozen=True)
class ScoreReport:
    sample_id: str
    metric_id: str
    breakdown: PenaltyBreakdown
    sf: Fraction
    raw_score: Fraction
    calibrated_score: Fraction
    nonlinear_score: "float | None"
    selection: MethodSelection
    model_used: "ModelName | None"
    rating: "Rating | None"
    warnings: tuple[str, ...]
    rounding_decimals: int


def error_type_penalty_total(
    cells: Iterable[ErrorCountCell], severity: SeveritySystem, weight
) -> Fraction:
    """Weighted penalty total for one error type's cells."""
    w = as_fraction(weight)
    total = Fraction(0)
    for cell in cells:
        total += cell.count * severity.multiplier_for(cell.severity_name)
    return total * w


def penalty_breakdown(sample: EvaluationSample, spec: MetricSpec) -> PenaltyBreakdown:
    """Compute etpt per type, apt, pwpt, and npt for a sample."""
    groups: dict = {}
    for cell in sample.cells:
        groups.setdefault(cell.error_type_id, []).append(cell)
    etpt = {
        type_id: error_type_penalty_total(cells, spec.severity, spec.node(type_id).weight)
        for type_id, cells in groups.items()
    }
    apt = sum(etpt.values(), Fraction(0))
    pwpt = apt / sample.ewc
    return PenaltyBreakdown(etpt_by_type=etpt, apt=apt, pwpt=pwpt, npt=pwpt * spec.rwc)


def raw_score(breakdown: PenaltyBreakdown, spec: MetricSpec) -> Fraction:
    """Raw quality score: the error-free portion of the sample on the msv scale."""
    return spec.msv * (1 - breakdown.pwpt)


def scaling_factor(spec: MetricSpec) -> Fraction:
    """Projects the acceptable penalty points onto the passing interval: dpi / app."""
    return spec.dpi / spec.app


def calibrated_score(breakdown: PenaltyBreakdown, spec: MetricSpec) -> Fraction:
    """Calibrated quality score: msv - npt * sf.

    npt == app lands exactly on pt; npt == 0 scores msv.
    """
    return spec.msv - breakdown.npt * scaling_factor(spec)


def rate(score, spec: MetricSpec, critical_count: int = 0) -> Rating:
    """PASS when the unrounded score reaches the passing threshold.

    With critical_auto_fail on, any critical error forces FAIL regardless
    of score.
    """
    if spec.severity.critical_auto_fail and critical_count > 0:
        return "FAIL"
    return "PASS" if score >= spec.pt else "FAIL"


def critical_error_count(sample: EvaluationSample, spec: MetricSpec) -> int:
    name = spec.severity.critical_name
    return sum(cell.count for cell in sample.cells if cell.severity_name == name)


def score_sample(
    sample: EvaluationSample,
    spec: MetricSpec,
    model: str = "auto",
    extrapolate: bool = False,
    tangent_window: float = DEFAULT_TANGENT_WINDOW,
) -> ScoreReport:
    """Score a sample under a metric; `auto` follows the range router.

    When routing lands in the small (SQC) range under `auto`, no analytic
    model is selected: model_used and rating are null and the report
    carries a guidance warning instead. An explicitly requested model is
    always honored, with a warning when it disagrees with the router.
    """
    if model not in MODEL_CHOICES:
        raise ValueError(f"model must be one of {', '.join(MODEL_CHOICES)}")
    ensure_valid(spec)

    selection = select_method(sample.ewc, spec, tangent_window=tangent_window)
    breakdown = penalty_breakdown(sample, spec)
    warnings = list(selection.warnings)

    raw = raw_score(breakdown, spec)
    calibrated = calibrated_score(breakdown, spec)
    if breakdown.pwpt > 1:
        warnings.append(
            "penalty points exceed the evaluated word count; raw and calibrated "
            "scores are negative"
        )

    nonlinear: "float | None" = None
    if model == "nonlinear":
        # fail loudly on an explicit request that cannot be served
        nonlinear = nonlinear_score(breakdown, sample.ewc, spec, extrapolate=extrapolate)
    elif spec.curve is not None:
        in_range = spec.curve.valid_from <= sample.ewc <= spec.curve.valid_to
        if in_range or extrapolate:
            nonlinear = nonlinear_score(breakdown, sample.ewc, spec, extrapolate=extrapolate)
    if nonlinear is not None and spec.curve is not None and not (
        spec.curve.valid_from <= sample.ewc <= spec.curve.valid_to
    ):
        warnings.append(
            f"tolerance curve extrapolated beyond its calibrated range "
            f"[{spec.curve.valid_from}, {spec.curve.valid_to}]"
        )

    model_used: "ModelName | None"
    if model == "auto":
        if selection.method == "SQC":
            model_used = None
            warnings.append(
                f"sample of {sample.ewc} words falls in the statistical sampling "
                "range; no analytic score is reported at this size. Inspect it "
                "with an acceptance-sampling plan instead (see the sampling module)."
            )
        elif selection.method == "NONLINEAR":
            if nonlinear is None:
                model_used = "CALIBRATED"
                warnings.append(
                    "router selected the non-linear model but the sample size is "
                    "outside the curve validity range; linear calibrated score used"
                )
            else:
                model_used = "NONLINEAR"
        else:
            model_used = "CALIBRATED"
    else:
        model_used = {"raw": "RAW", "calibrated": "CALIBRATED", "nonlinear": "NONLINEAR"}[model]
        consistent = {
            "SQC": (),
            "LINEAR": ("RAW", "CALIBRATED"),
            "NONLINEAR": ("NONLINEAR",),
        }[selection.method]
        if model_used not in consistent:
            warnings.append(
                f"requested the {model_used} model but the router recommends "
                f"{selection.method} for {sample.ewc} words"
            )

    critical = critical_error_count(sample, spec)
    rating: "Rating | None"
    if model_used is None:
        rating = None
    elif model_used == "RAW":
        # the raw scale's passing boundary is npt == app (equivalently
        # raw >= msv - app * msv / rwc); pt lives on the calibrated scale
        if spec.severity.critical_auto_fail and critical > 0:
            rating = "FAIL"
        else:
            rating = "PASS" if breakdown.npt <= spec.app else "FAIL"
    elif model_used == "CALIBRATED":
        rating = rate(calibrated, spec, critical)
    else:
        rating = rate(nonlinear, spec, critical)

    return ScoreReport(
        sample_id=sample.id,
        metric_id=spec.id,
        breakdown=breakdown,
        sf=scaling_factor(spec),
        raw_score=raw,
        calibrated_score=calibrated,
        nonlinear_score=nonlinear,
        selection=selection,
        model_used=model_used,
        rating=rating,
        warnings=tuple(warnings),
        rounding_decimals=spec.rounding_decimals,
    )


def _rounded(value, decimals: int):
    if value is None:
        return None
    return doc_number(round_half_away(as_fraction(value), decimals))


def score_report_to_doc(report: ScoreReport) -> dict:
    """Canonical report document with every intermediate value, so the
    arithmetic can be audited; scores appear unrounded plus a rounded
    display block."""
    return {
        "sample_id": report.sample_id,
        "metric_id": report.metric_id,
        "breakdown": {
            "etpt_by_type": {
                type_id: doc_number(value)
                for type_id, value in report.breakdown.etpt_by_type.items()
            },
            "apt": doc_number(report.breakdown.apt),
            "pwpt": doc_number(report.breakdown.pwpt),
            "npt": doc_number(report.breakdown.npt),
        },
        "sf": doc_number(report.sf),
        "raw_score": doc_number(report.raw_score),
        "calibrated_score": doc_number(report.calibrated_score),
        "nonlinear_score": report.nonlinear_score,
        "rating": report.rating,
        "model_used": report.model_used,
        "selection": selection_to_doc(report.selection),
        "warnings": list(report.warnings),
        "rounded": {
            "raw_score": _rounded(report.raw_score, report.rounding_decimals),
            "calibrated_score": _rounded(report.calibrated_score, report.rounding_decimals),
            "nonlinear_score": _rounded(report.nonlinear_score, report.rounding_decimals),
        },
    }
