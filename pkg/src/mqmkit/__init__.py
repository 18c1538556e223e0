"""Translation quality measurement engine.

Implements the MQM 2.0 scoring models (raw linear, calibrated linear,
and non-linear logarithmic), sample-size range routing, binomial
acceptance sampling for very small samples, and replay-based calibration
of metric parameters against historical holistic judgments.
"""

__version__ = "0.1.0"

from .annotation import (
    ErrorCountCell,
    EvaluationSample,
    load_sample,
    merge_samples,
    sample_from_doc,
    sample_to_doc,
)
from .calibration import (
    HistoricalEvaluation,
    ReplayResult,
    average_failure_threshold,
    history_from_doc,
    load_history,
    replay,
    replay_result_to_doc,
)
from .errors import (
    ConfigError,
    CurveFitError,
    FormatError,
    MqmError,
    NotFoundError,
    PlanSearchError,
    UnknownErrorTypeError,
    UnknownSeverityError,
    ValidityRangeError,
)
from .model import (
    ErrorTypeNode,
    MetricSpec,
    MetricValidationError,
    RangeThresholds,
    SeverityLevel,
    SeveritySystem,
    ValidationReport,
    Violation,
    default_core_metric,
    default_severity_system,
    ensure_valid,
    load_metric,
    metric_from_doc,
    metric_to_doc,
    validate_metric,
    validation_to_doc,
)
from .routing import MethodSelection, select_method, selection_to_doc
from .sampling import (
    SamplingPlan,
    acceptance_probability,
    find_plan,
    oc_curve,
    oc_table,
    plan_to_doc,
)
from .scoring import (
    PenaltyBreakdown,
    ScoreReport,
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
from .store import EntityStore, StoredEntity
from .tolerance import (
    TolerancePoint,
    ToleranceCurve,
    curve_from_doc,
    curve_to_doc,
    fit_tolerance_curve,
    linear_equivalent_app,
    nonlinear_score,
    parse_tolerance_points,
    per_word_tolerance_decreasing,
    tolerance_at,
)

__all__ = [
    "__version__",
    "ErrorCountCell",
    "EvaluationSample",
    "load_sample",
    "merge_samples",
    "sample_from_doc",
    "sample_to_doc",
    "HistoricalEvaluation",
    "ReplayResult",
    "average_failure_threshold",
    "history_from_doc",
    "load_history",
    "replay",
    "replay_result_to_doc",
    "ConfigError",
    "CurveFitError",
    "FormatError",
    "MqmError",
    "NotFoundError",
    "PlanSearchError",
    "UnknownErrorTypeError",
    "UnknownSeverityError",
    "ValidityRangeError",
    "ErrorTypeNode",
    "MetricSpec",
    "MetricValidationError",
    "RangeThresholds",
    "SeverityLevel",
    "SeveritySystem",
    "ValidationReport",
    "Violation",
    "default_core_metric",
    "default_severity_system",
    "ensure_valid",
    "load_metric",
    "metric_from_doc",
    "metric_to_doc",
    "validate_metric",
    "validation_to_doc",
    "MethodSelection",
    "select_method",
    "selection_to_doc",
    "SamplingPlan",
    "acceptance_probability",
    "find_plan",
    "oc_curve",
    "oc_table",
    "plan_to_doc",
    "PenaltyBreakdown",
    "ScoreReport",
    "calibrated_score",
    "critical_error_count",
    "error_type_penalty_total",
    "penalty_breakdown",
    "rate",
    "raw_score",
    "scaling_factor",
    "score_report_to_doc",
    "score_sample",
    "EntityStore",
    "StoredEntity",
    "TolerancePoint",
    "ToleranceCurve",
    "curve_from_doc",
    "curve_to_doc",
    "fit_tolerance_curve",
    "linear_equivalent_app",
    "nonlinear_score",
    "parse_tolerance_points",
    "per_word_tolerance_decreasing",
    "tolerance_at",
]
