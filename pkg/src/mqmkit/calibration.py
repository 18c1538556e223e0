"""Replay of historical evaluations against candidate metric settings.

Teams introducing a calibrated metric usually hold a backlog of
evaluations where the pass/fail call was made holistically, independent
of the error marks. Replaying that backlog under candidate weights,
multipliers, and thresholds shows which candidate best reproduces the
holistic judgments, and the average penalty density of the failed ones
suggests a starting tolerance.
"""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .annotation import ErrorCountCell, EvaluationSample, sample_from_doc, sample_to_doc
from .errors import FormatError
from .model import MetricSpec, ensure_valid
from .numeric import doc_number
from .scoring import (
    Rating,
    critical_error_count,
    penalty_breakdown,
    rate,
    score_sample,
)

HISTORY_HEADER = (
    "sample_id",
    "ewc",
    "error_type_id",
    "severity",
    "count",
    "holistic_rating",
)


@dataclass(frozen=True)
class HistoricalEvaluation:
    sample: EvaluationSample
    holistic_rating: Rating


@dataclass(frozen=True)
class ConfusionCounts:
    """Counts keyed as (holistic, computed)."""

    pass_pass: int = 0
    pass_fail: int = 0
    fail_pass: int = 0
    fail_fail: int = 0

    @property
    def total(self) -> int:
        return self.pass_pass + self.pass_fail + self.fail_pass + self.fail_fail


@dataclass(frozen=True)
class SampleOutcome:
    sample_id: str
    computed_rating: Rating
    holistic_rating: Rating
    score: Fraction


@dataclass(frozen=True)
class ReplayResult:
    candidate_id: str
    agreement: Fraction
    confusion: ConfusionCounts
    per_sample: tuple


def _replay_one(
    evaluations: Sequence[HistoricalEvaluation], candidate: MetricSpec
) -> ReplayResult:
    counts = {"pass_pass": 0, "pass_fail": 0, "fail_pass": 0, "fail_fail": 0}
    outcomes = []
    for evaluation in evaluations:
        report = score_sample(evaluation.sample, candidate, model="auto")
        computed = report.rating
        score = (
            report.nonlinear_score
            if report.model_used == "NONLINEAR"
            else report.calibrated_score
        )
        if computed is None:
            # routed to SQC (small sample); fall back to the calibrated
            # rating so the historical comparison stays possible
            computed = rate(
                report.calibrated_score,
                candidate,
                critical_error_count(evaluation.sample, candidate),
            )
            score = report.calibrated_score
        key = f"{evaluation.holistic_rating.lower()}_{computed.lower()}"
        counts[key] += 1
        outcomes.append(
            SampleOutcome(
                sample_id=evaluation.sample.id,
                computed_rating=computed,
                holistic_rating=evaluation.holistic_rating,
                score=score,
            )
        )
    total = len(evaluations)
    return ReplayResult(
        candidate_id=candidate.id,
        agreement=Fraction(counts["pass_pass"] + counts["fail_fail"], total),
        confusion=ConfusionCounts(**counts),
        per_sample=tuple(outcomes),
    )


def replay(
    evaluations: Sequence[HistoricalEvaluation], candidates: Sequence[MetricSpec]
) -> list:
    """One ReplayResult per candidate; samples are scored with the
    candidate's routed method."""
    if not evaluations:
        raise ValueError("evaluations must be non-empty")
    for candidate in candidates:
        ensure_valid(candidate)
    return [_replay_one(evaluations, candidate) for candidate in candidates]


def average_failure_threshold(
    evaluations: Sequence[HistoricalEvaluation], spec: MetricSpec
) -> Fraction:
    """Mean normed penalty total of the holistically failed evaluations.

    That average marks where reviewers stopped accepting translations
    and is a reasonable opening bid for the metric's app.
    """
    ensure_valid(spec)
    failed = [e for e in evaluations if e.holistic_rating == "FAIL"]
    if not failed:
        raise ValueError("no FAIL evaluations present")
    npts = [penalty_breakdown(e.sample, spec).npt for e in failed]
    return sum(npts, Fraction(0)) / len(npts)


def history_from_doc(doc) -> list:
    """Parse canonical history: a list of {sample, holistic_rating}."""
    if not isinstance(doc, list):
        raise FormatError("history document must be a list")
    evaluations = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict):
            raise FormatError(f"history[{i}] must be an object")
        for key in item:
            if key not in {"sample", "holistic_rating"}:
                raise FormatError(f"unknown history field {key!r}")
        if "sample" not in item or "holistic_rating" not in item:
            raise FormatError(f"history[{i}] needs 'sample' and 'holistic_rating'")
        rating = item["holistic_rating"]
        if rating not in ("PASS", "FAIL"):
            raise FormatError(f"history[{i}]: holistic_rating must be PASS or FAIL")
        evaluations.append(
            HistoricalEvaluation(sample=sample_from_doc(item["sample"]), holistic_rating=rating)
        )
    return evaluations


def _history_from_table(text: str) -> list:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows or tuple(h.strip() for h in rows[0]) != HISTORY_HEADER:
        raise FormatError(f"history header must be {','.join(HISTORY_HEADER)}")
    order = []
    ewc_by_id: dict = {}
    rating_by_id: dict = {}
    cells_by_id: dict = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 6:
            raise FormatError(f"line {lineno}: expected 6 columns, got {len(row)}")
        sample_id, ewc_text, type_id, severity, count_text, rating = (
            value.strip() for value in row
        )
        if rating not in ("PASS", "FAIL"):
            raise FormatError(f"line {lineno}: holistic_rating must be PASS or FAIL")
        try:
            ewc = int(ewc_text)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: ewc is not an integer") from exc
        if sample_id not in ewc_by_id:
            order.append(sample_id)
            ewc_by_id[sample_id] = ewc
            rating_by_id[sample_id] = rating
            cells_by_id[sample_id] = []
        elif ewc_by_id[sample_id] != ewc or rating_by_id[sample_id] != rating:
            raise FormatError(
                f"line {lineno}: rows for sample {sample_id!r} disagree on ewc or rating"
            )
        if type_id == "" and severity == "" and count_text == "":
            continue  # placeholder row for an error-free sample
        try:
            count = int(count_text)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: count is not an integer") from exc
        cells_by_id[sample_id].append(ErrorCountCell(type_id, severity, count))
    return [
        HistoricalEvaluation(
            sample=EvaluationSample(
                id=sample_id, ewc=ewc_by_id[sample_id], cells=tuple(cells_by_id[sample_id])
            ),
            holistic_rating=rating_by_id[sample_id],
        )
        for sample_id in order
    ]


def load_history(text: str) -> list:
    """Load history from canonical JSON or the flat tabular format."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"history document is not valid JSON: {exc}") from exc
        return history_from_doc(doc)
    return _history_from_table(text)


def history_to_doc(evaluations: Sequence[HistoricalEvaluation]) -> list:
    return [
        {"sample": sample_to_doc(e.sample), "holistic_rating": e.holistic_rating}
        for e in evaluations
    ]


def replay_result_to_doc(result: ReplayResult) -> dict:
    return {
        "candidate_id": result.candidate_id,
        "agreement": doc_number(result.agreement),
        "confusion": {
            "pass_pass": result.confusion.pass_pass,
            "pass_fail": result.confusion.pass_fail,
            "fail_pass": result.confusion.fail_pass,
            "fail_fail": result.confusion.fail_fail,
        },
        "per_sample": [
            {
                "sample_id": outcome.sample_id,
                "computed_rating": outcome.computed_rating,
                "holistic_rating": outcome.holistic_rating,
                "score": doc_number(outcome.score),
            }
            for outcome in result.per_sample
        ],
    }


def replay_summary_table(results: Sequence[ReplayResult]) -> str:
    """Per-candidate agreement summary as tabular text."""
    lines = ["candidate_id,agreement,pass_pass,pass_fail,fail_pass,fail_fail"]
    for result in results:
        c = result.confusion
        lines.append(
            f"{result.candidate_id},{float(result.agreement)},"
            f"{c.pass_pass},{c.pass_fail},{c.fail_pass},{c.fail_fail}"
        )
    return "\n".join(lines) + "\n"
