"""Pydantic request/response models for the HTTP service.

These mirror the canonical documents produced by the library
serializers field for field; the HTTP layer introduces no schema of its
own. Requests are validated for shape here and then parsed by the same
document parsers the CLI uses, so there is exactly one place where
domain validation happens.
"""

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict

Num = Union[int, float]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ErrorTypeNodeDoc(_Strict):
    id: str
    name: Optional[str] = None
    description: str = ""
    parent_id: Optional[str] = None
    weight: Num = 1


class SeverityLevelDoc(_Strict):
    name: str
    multiplier: Num


class SeveritySystemDoc(_Strict):
    levels: list[SeverityLevelDoc]
    critical_auto_fail: bool = False


class RangeThresholdsDoc(_Strict):
    sqc_max_words: int = 250
    linear_max_words: int = 5000


class TolerancePointDoc(_Strict):
    sample_words: int
    acceptable_penalty_points: Num


class ToleranceCurveDoc(_Strict):
    a: float
    b: float
    valid_from: int
    valid_to: int
    fit_residual: float = 0.0
    source_points: list[TolerancePointDoc] = []


class MetricDoc(_Strict):
    id: str
    typology: list[ErrorTypeNodeDoc]
    severity: SeveritySystemDoc
    msv: Num = 100
    rwc: int = 1000
    pt: Num
    app: Num
    range_thresholds: RangeThresholdsDoc = RangeThresholdsDoc()
    curve: Optional[ToleranceCurveDoc] = None
    rounding_decimals: int = 2


class SampleCellDoc(_Strict):
    error_type_id: str
    severity_name: str
    count: int


class SampleDoc(_Strict):
    id: str = "sample"
    ewc: int
    cells: list[SampleCellDoc] = []
    metadata: dict[str, str] = {}


class ScoreRequest(_Strict):
    metric_id: Optional[str] = None
    metric: Optional[MetricDoc] = None
    sample: SampleDoc
    model: Literal["raw", "calibrated", "nonlinear", "auto"] = "auto"
    extrapolate: bool = False


class FitRequest(_Strict):
    points: list[TolerancePointDoc]


class HistoryItemDoc(_Strict):
    sample: SampleDoc
    holistic_rating: Literal["PASS", "FAIL"]


class ReplayRequest(_Strict):
    history: list[HistoryItemDoc]
    candidates: list[MetricDoc]


class PlanRequest(_Strict):
    aql: float
    rql: float
    alpha: float
    beta: float
    n_max: int = 400
    unit: Literal["WORD", "SENTENCE"] = "SENTENCE"


class RouteRequest(_Strict):
    ewc: int
    metric_id: Optional[str] = None
    metric: Optional[MetricDoc] = None


# responses


class ViolationDoc(BaseModel):
    path: str
    message: str


class ValidationReportDoc(BaseModel):
    valid: bool
    violations: list[ViolationDoc]


class MetricCreatedDoc(BaseModel):
    id: str
    metric: MetricDoc


class BreakdownDoc(BaseModel):
    etpt_by_type: dict[str, Num]
    apt: Num
    pwpt: Num
    npt: Num


class SelectionDoc(BaseModel):
    method: Literal["SQC", "LINEAR", "NONLINEAR"]
    range: Literal["RS", "RM", "RL"]
    rationale: str
    warnings: list[str]


class RoundedDoc(BaseModel):
    raw_score: Optional[Num]
    calibrated_score: Optional[Num]
    nonlinear_score: Optional[Num]


class ScoreReportDoc(BaseModel):
    sample_id: str
    metric_id: str
    breakdown: BreakdownDoc
    sf: Num
    raw_score: Num
    calibrated_score: Num
    nonlinear_score: Optional[float]
    rating: Optional[Literal["PASS", "FAIL"]]
    model_used: Optional[Literal["RAW", "CALIBRATED", "NONLINEAR"]]
    selection: SelectionDoc
    warnings: list[str]
    rounded: RoundedDoc


class ConfusionDoc(BaseModel):
    pass_pass: int
    pass_fail: int
    fail_pass: int
    fail_fail: int


class SampleOutcomeDoc(BaseModel):
    sample_id: str
    computed_rating: Literal["PASS", "FAIL"]
    holistic_rating: Literal["PASS", "FAIL"]
    score: Num


class ReplayResultDoc(BaseModel):
    candidate_id: str
    agreement: Num
    confusion: ConfusionDoc
    per_sample: list[SampleOutcomeDoc]


class PlanDoc(BaseModel):
    n: int
    c: int
    unit: Literal["WORD", "SENTENCE"]
    aql: float
    rql: float
    producer_risk: float
    consumer_risk: float


class HealthDoc(BaseModel):
    status: str
    version: str


class ApiErrorDoc(BaseModel):
    status: int
    code: str
    message: str
    details: Optional[list[ViolationDoc]] = None
