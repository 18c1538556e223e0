"""Logarithmic error-tolerance curves for size-dependent scoring.

The fitted model is T(n) = a*ln(n) + b: the penalty-point budget that
reviewers still accept on a sample of n words. Raising the sample size
raises the absolute budget but lowers the per-word budget T(n)/n, which
is what makes a single linear tolerance wrong far from its calibration
size. Fitting is ordinary least squares of the budget against ln(n).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import ConfigError, CurveFitError, FormatError, ValidityRangeError
from .numeric import require_int

if TYPE_CHECKING:
    from .model import MetricSpec
    from .scoring import PenaltyBreakdown

WORDS_PER_PAGE = 250
VALIDITY_GRID_POINTS = 64

POINTS_HEADER = ("sample_words", "acceptable_penalty_points")
PAGES_HEADER = ("sample_pages", "acceptable_major_errors")


@dataclass(frozen=True)
class TolerancePoint:
    """One calibration answer: acceptable penalty points at a sample size."""

    sample_words: int
    acceptable_penalty_points: float

    def __post_init__(self):
        if self.sample_words < 1:
            raise CurveFitError("sample_words must be >= 1")
        if not self.acceptable_penalty_points > 0:
            raise CurveFitError("acceptable_penalty_points must be > 0")


@dataclass(frozen=True)
class ToleranceCurve:
    """Fitted tolerance T(n) = a*ln(n) + b with its validity range."""

    a: float
    b: float
    valid_from: int
    valid_to: int
    fit_residual: float
    source_points: tuple[TolerancePoint, ...] = ()


def curve_problems(curve: ToleranceCurve) -> list[str]:
    """Check curve invariants; returns messages, empty when sound.

    Positivity is checked numerically on a grid across the validity
    range. Per-word tolerance must show a strict net decrease between
    the range endpoints: a fitted "tolerance" that grants big samples a
    larger per-word budget than small ones contradicts the whole premise
    of size-dependent calibration. (A log curve can still rise per-word
    briefly at the very low end when T(valid_from) < a; see
    per_word_tolerance_decreasing for the pointwise diagnostic.)
    """
    problems = []
    if not curve.a > 0:
        problems.append("curve slope a must be > 0 (tolerance grows with size)")
    if curve.valid_from < 1:
        problems.append("valid_from must be >= 1")
    if curve.valid_to <= curve.valid_from:
        problems.append("valid_to must exceed valid_from")
    if curve.fit_residual < 0:
        problems.append("fit_residual must be >= 0")
    if problems:
        return problems

    step = (curve.valid_to - curve.valid_from) / (VALIDITY_GRID_POINTS - 1)
    grid = [curve.valid_from + i * step for i in range(VALIDITY_GRID_POINTS)]
    values = [curve.a * math.log(n) + curve.b for n in grid]
    if any(t <= 0 for t in values):
        problems.append("tolerance T(n) must stay positive across the validity range")
    elif values[0] / grid[0] <= values[-1] / grid[-1]:
        problems.append(
            "per-word tolerance must decrease across the validity range "
            "(T(valid_from)/valid_from must exceed T(valid_to)/valid_to)"
        )
    return problems


def per_word_tolerance_decreasing(curve: ToleranceCurve) -> bool:
    """Whether T(n)/n is strictly decreasing at every grid point.

    Exactly equivalent to T(valid_from) >= a for a log curve; curves
    fitted from low-end answers below the slope rise per-word briefly
    before the decrease sets in.
    """
    step = (curve.valid_to - curve.valid_from) / (VALIDITY_GRID_POINTS - 1)
    grid = [curve.valid_from + i * step for i in range(VALIDITY_GRID_POINTS)]
    per_word = [(curve.a * math.log(n) + curve.b) / n for n in grid]
    return all(nxt < prev for prev, nxt in zip(per_word, per_word[1:]))


def fit_tolerance_curve(points: Sequence[TolerancePoint]) -> ToleranceCurve:
    """Least-squares fit of penalty-point tolerance against ln(sample_words).

    Needs at least two distinct sample sizes. The validity range defaults
    to the span of the input sizes. Raises CurveFitError when the fit
    violates the curve invariants (non-positive slope or tolerance).
    """
    if len({p.sample_words for p in points}) < 2:
        raise CurveFitError("need at least 2 points with distinct sample sizes")

    xs = [math.log(p.sample_words) for p in points]
    ys = [p.acceptable_penalty_points for p in points]
    x_mean = math.fsum(xs) / len(xs)
    y_mean = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    a = sxy / sxx
    b = y_mean - a * x_mean
    residual = math.fsum((y - (a * x + b)) ** 2 for x, y in zip(xs, ys))

    curve = ToleranceCurve(
        a=a,
        b=b,
        valid_from=min(p.sample_words for p in points),
        valid_to=max(p.sample_words for p in points),
        fit_residual=residual,
        source_points=tuple(points),
    )
    problems = curve_problems(curve)
    if problems:
        raise CurveFitError("; ".join(problems))
    return curve


def tolerance_at(curve: ToleranceCurve, n: int, extrapolate: bool = False) -> float:
    """Acceptable penalty points for a sample of n words.

    Outside [valid_from, valid_to] this raises unless extrapolate is set;
    the curve shape is only surveyed inside that range.
    """
    if n < 1:
        raise ValidityRangeError("sample size must be >= 1")
    if not (curve.valid_from <= n <= curve.valid_to) and not extrapolate:
        raise ValidityRangeError(
            f"sample of {n} words is outside the curve validity range "
            f"[{curve.valid_from}, {curve.valid_to}]"
        )
    return curve.a * math.log(n) + curve.b


def nonlinear_score(
    breakdown: "PenaltyBreakdown",
    ewc: int,
    spec: "MetricSpec",
    extrapolate: bool = False,
) -> float:
    """Quality score against the size-dependent tolerance T(ewc).

    score = msv - (apt / T(ewc)) * (msv - pt): a sample that spends
    exactly its tolerated penalty budget lands on the passing threshold,
    an error-free sample scores msv.
    """
    if spec.curve is None:
        raise ConfigError("metric has no tolerance curve; cannot score non-linearly")
    t = tolerance_at(spec.curve, ewc, extrapolate=extrapolate)
    if t <= 0:
        raise CurveFitError(f"tolerance at {ewc} words is not positive")
    return float(spec.msv) - (float(breakdown.apt) / t) * float(spec.msv - spec.pt)


def linear_equivalent_app(
    curve: ToleranceCurve, standard_sample_words: int, rwc: int
) -> float:
    """Acceptable penalty points per rwc that makes the linear calibrated
    model agree with the non-linear one exactly at the given sample size
    (the tangent point). Above that size the linear model is more lenient,
    below it harsher.
    """
    t = tolerance_at(curve, standard_sample_words)
    return t * rwc / standard_sample_words


def parse_tolerance_points(text: str, major_multiplier=5) -> list[TolerancePoint]:
    """Parse a calibration questionnaire table.

    Accepts `sample_words,acceptable_penalty_points` rows, or
    `sample_pages,acceptable_major_errors` rows which are converted at
    250 words per page and major_multiplier penalty points per error.
    """
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise FormatError("empty questionnaire document")
    header = tuple(h.strip() for h in rows[0])
    if header == POINTS_HEADER:
        pages = False
    elif header == PAGES_HEADER:
        pages = True
    else:
        raise FormatError(
            f"questionnaire header must be {','.join(POINTS_HEADER)} "
            f"or {','.join(PAGES_HEADER)}"
        )
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise FormatError(f"line {lineno}: expected 2 columns, got {len(row)}")
        try:
            size = float(row[0])
            tol = float(row[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: not a number: {exc}") from exc
        if pages:
            size = size * WORDS_PER_PAGE
            tol = tol * float(major_multiplier)
        if size != int(size) or size < 1:
            raise FormatError(f"line {lineno}: sample size must be a positive word count")
        points.append(TolerancePoint(int(size), tol))
    return points


def curve_to_doc(curve: ToleranceCurve) -> dict:
    return {
        "a": curve.a,
        "b": curve.b,
        "valid_from": curve.valid_from,
        "valid_to": curve.valid_to,
        "fit_residual": curve.fit_residual,
        "source_points": [
            {
                "sample_words": p.sample_words,
                "acceptable_penalty_points": p.acceptable_penalty_points,
            }
            for p in curve.source_points
        ],
    }


def curve_from_doc(doc: dict) -> ToleranceCurve:
    if not isinstance(doc, dict):
        raise FormatError("curve must be an object")
    allowed = {"a", "b", "valid_from", "valid_to", "fit_residual", "source_points"}
    for key in doc:
        if key not in allowed:
            raise FormatError(f"unknown curve field {key!r}")
    for key in ("a", "b", "valid_from", "valid_to"):
        if key not in doc:
            raise FormatError(f"curve is missing field {key!r}")
    points = []
    for i, item in enumerate(doc.get("source_points", [])):
        if not isinstance(item, dict):
            raise FormatError(f"source_points[{i}] must be an object")
        extra = set(item) - {"sample_words", "acceptable_penalty_points"}
        if extra:
            raise FormatError(f"unknown tolerance point field {sorted(extra)[0]!r}")
        points.append(
            TolerancePoint(
                require_int(item.get("sample_words"), "sample_words"),
                float(item.get("acceptable_penalty_points", 0)),
            )
        )
    curve = ToleranceCurve(
        a=float(doc["a"]),
        b=float(doc["b"]),
        valid_from=require_int(doc["valid_from"], "valid_from"),
        valid_to=require_int(doc["valid_to"], "valid_to"),
        fit_residual=float(doc.get("fit_residual", 0.0)),
        source_points=tuple(points),
    )
    problems = curve_problems(curve)
    if problems:
        raise FormatError("; ".join(problems))
    return curve


def points_to_docs(points: Iterable[TolerancePoint]) -> list[dict]:
    return [
        {
            "sample_words": p.sample_words,
            "acceptable_penalty_points": p.acceptable_penalty_points,
        }
        for p in points
    ]
