"""Metric configuration: error typology, severity system, scoring parameters.

A MetricSpec is the complete, immutable description of one scoring
setup. Everything downstream (penalty totals, scores, routing) is a pure
function of a spec and a sample, so validate_metric is the single gate
that makes all of it well-defined: a spec with an empty violation report
can never reach a division by zero or an unresolvable name later.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .errors import ConfigError, FormatError, UnknownErrorTypeError, UnknownSeverityError
from .numeric import as_fraction, doc_number, require_int
from .tolerance import ToleranceCurve, curve_from_doc, curve_problems, curve_to_doc

DEFAULT_MSV = 100
DEFAULT_RWC = 1000
DEFAULT_ROUNDING_DECIMALS = 2
DEFAULT_SQC_MAX_WORDS = 250
DEFAULT_LINEAR_MAX_WORDS = 5000

_CORE_RESOURCE = "data/mqm_core.json"


@dataclass(frozen=True)
class ErrorTypeNode:
    """One node of the error typology; weight scales its penalty points."""

    id: str
    name: str
    description: str = ""
    parent_id: "str | None" = None
    weight: Fraction = Fraction(1)


@dataclass(frozen=True)
class SeverityLevel:
    name: str
    multiplier: Fraction


@dataclass(frozen=True)
class SeveritySystem:
    """Ordered severity levels with their penalty multipliers.

    Levels are listed from mildest to most severe; when critical_auto_fail
    is on, any error at the last (most severe) level forces a FAIL rating
    regardless of score.
    """

    levels: tuple[SeverityLevel, ...]
    critical_auto_fail: bool = False

    def multiplier_for(self, name: str) -> Fraction:
        for level in self.levels:
            if level.name == name:
                return level.multiplier
        known = ", ".join(level.name for level in self.levels)
        raise UnknownSeverityError(f"unknown severity {name!r} (known: {known})")

    @property
    def critical_name(self) -> str:
        return self.levels[-1].name


def default_severity_system() -> SeveritySystem:
    return SeveritySystem(
        levels=(
            SeverityLevel("Neutral", Fraction(0)),
            SeverityLevel("Minor", Fraction(1)),
            SeverityLevel("Major", Fraction(5)),
            SeverityLevel("Critical", Fraction(25)),
        ),
        critical_auto_fail=False,
    )


@dataclass(frozen=True)
class RangeThresholds:
    """Sample-size boundaries between the SQC, linear, and non-linear ranges."""

    sqc_max_words: int = DEFAULT_SQC_MAX_WORDS
    linear_max_words: int = DEFAULT_LINEAR_MAX_WORDS


@dataclass(frozen=True)
class MetricSpec:
    """A complete scoring configuration.

    msv is the top of the score scale, pt the passing threshold on the
    calibrated scale, and app the penalty points per rwc words that are
    still acceptable (the tolerance that calibration maps onto pt).
    """

    id: str
    typology: tuple[ErrorTypeNode, ...]
    severity: SeveritySystem
    pt: Fraction
    app: Fraction
    msv: Fraction = Fraction(DEFAULT_MSV)
    rwc: int = DEFAULT_RWC
    range_thresholds: RangeThresholds = field(default_factory=RangeThresholds)
    curve: "ToleranceCurve | None" = None
    rounding_decimals: int = DEFAULT_ROUNDING_DECIMALS

    @property
    def dpi(self) -> Fraction:
        """Defined passing interval: msv - pt."""
        return self.msv - self.pt

    def node(self, type_id: str) -> ErrorTypeNode:
        for node in self.typology:
            if node.id == type_id:
                return node
        raise UnknownErrorTypeError(f"unknown error type {type_id!r}")


@dataclass(frozen=True)
class Violation:
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


class MetricValidationError(ConfigError):
    """Raised when an operation requires a valid metric and got violations."""

    def __init__(self, report: ValidationReport):
        self.report = report
        summary = "; ".join(f"{v.path}: {v.message}" for v in report.violations)
        super().__init__(f"metric failed validation: {summary}")


def validate_metric(spec: MetricSpec) -> ValidationReport:
    """Check every MetricSpec invariant; reports all violations, not just the first."""
    out: list[Violation] = []

    by_id: dict[str, ErrorTypeNode] = {}
    for i, node in enumerate(spec.typology):
        path = f"typology[{i}]"
        if node.id in by_id:
            out.append(Violation(f"{path}.id", f"duplicate error type id {node.id!r}"))
        else:
            by_id[node.id] = node
        if node.weight < 0:
            out.append(Violation(f"{path}.weight", "weight must be >= 0"))
    for i, node in enumerate(spec.typology):
        path = f"typology[{i}]"
        if node.parent_id is not None and node.parent_id not in by_id:
            out.append(
                Violation(f"{path}.parent_id", f"parent {node.parent_id!r} does not exist")
            )
    for i, node in enumerate(spec.typology):
        seen = {node.id}
        current = node
        while current.parent_id is not None:
            if current.parent_id in seen or current.parent_id not in by_id:
                if current.parent_id in seen:
                    out.append(
                        Violation(f"typology[{i}]", f"hierarchy cycle at {node.id!r}")
                    )
                break
            seen.add(current.parent_id)
            current = by_id[current.parent_id]

    if len(spec.severity.levels) < 2:
        out.append(Violation("severity.levels", "at least 2 severity levels required"))
    names = set()
    for i, level in enumerate(spec.severity.levels):
        path = f"severity.levels[{i}]"
        if level.name in names:
            out.append(Violation(f"{path}.name", f"duplicate severity name {level.name!r}"))
        names.add(level.name)
        if level.multiplier < 0:
            out.append(Violation(f"{path}.multiplier", "multiplier must be >= 0"))
        if i > 0 and level.multiplier < spec.severity.levels[i - 1].multiplier:
            out.append(
                Violation(f"{path}.multiplier", "multipliers must be non-decreasing")
            )

    if spec.msv <= 0:
        out.append(Violation("msv", "msv must be > 0"))
    if spec.pt < 0:
        out.append(Violation("pt", "pt must be >= 0"))
    if spec.pt >= spec.msv:
        out.append(Violation("pt", "DPI must be positive (pt < msv)"))
    if spec.app <= 0:
        out.append(Violation("app", "app must be > 0"))
    if spec.rwc < 1:
        out.append(Violation("rwc", "rwc must be >= 1"))
    if spec.rounding_decimals < 0:
        out.append(Violation("rounding_decimals", "rounding_decimals must be >= 0"))

    thresholds = spec.range_thresholds
    if thresholds.sqc_max_words < 1:
        out.append(Violation("range_thresholds.sqc_max_words", "must be >= 1"))
    if thresholds.linear_max_words <= thresholds.sqc_max_words:
        out.append(
            Violation(
                "range_thresholds.linear_max_words",
                "sqc_max_words must be below linear_max_words",
            )
        )

    if spec.curve is not None:
        for problem in curve_problems(spec.curve):
            out.append(Violation("curve", problem))

    return ValidationReport(tuple(out))


def ensure_valid(spec: MetricSpec) -> None:
    report = validate_metric(spec)
    if not report.ok:
        raise MetricValidationError(report)


def default_core_metric() -> MetricSpec:
    """The bundled default: seven top-level dimensions, weights 1,
    severity multipliers 0/1/5/25, msv 100, rwc 1000, pt 85, app 20."""
    try:
        text = resources.files("mqmkit").joinpath(_CORE_RESOURCE).read_text("utf-8")
        return metric_from_doc(json.loads(text))
    except (OSError, json.JSONDecodeError, FormatError) as exc:
        raise ConfigError(f"bundled default metric is unusable: {exc}") from exc


def metric_to_doc(spec: MetricSpec) -> dict:
    """Canonical document form; field names match the MetricSpec fields."""
    return {
        "id": spec.id,
        "typology": [
            {
                "id": node.id,
                "name": node.name,
                "description": node.description,
                "parent_id": node.parent_id,
                "weight": doc_number(node.weight),
            }
            for node in spec.typology
        ],
        "severity": {
            "levels": [
                {"name": level.name, "multiplier": doc_number(level.multiplier)}
                for level in spec.severity.levels
            ],
            "critical_auto_fail": spec.severity.critical_auto_fail,
        },
        "msv": doc_number(spec.msv),
        "rwc": spec.rwc,
        "pt": doc_number(spec.pt),
        "app": doc_number(spec.app),
        "range_thresholds": {
            "sqc_max_words": spec.range_thresholds.sqc_max_words,
            "linear_max_words": spec.range_thresholds.linear_max_words,
        },
        "curve": curve_to_doc(spec.curve) if spec.curve is not None else None,
        "rounding_decimals": spec.rounding_decimals,
    }


def _check_fields(doc: dict, allowed: set, what: str) -> None:
    for key in doc:
        if key not in allowed:
            raise FormatError(f"unknown {what} field {key!r}")


def metric_from_doc(doc: dict) -> MetricSpec:
    """Parse the canonical metric document. Unknown fields are rejected."""
    if not isinstance(doc, dict):
        raise FormatError("metric document must be an object")
    _check_fields(
        doc,
        {
            "id", "typology", "severity", "msv", "rwc", "pt", "app",
            "range_thresholds", "curve", "rounding_decimals",
        },
        "metric",
    )
    for required in ("id", "typology", "severity", "pt", "app"):
        if required not in doc:
            raise FormatError(f"metric is missing field {required!r}")

    nodes = []
    for i, item in enumerate(doc["typology"]):
        if not isinstance(item, dict):
            raise FormatError(f"typology[{i}] must be an object")
        _check_fields(item, {"id", "name", "description", "parent_id", "weight"}, "error type")
        if "id" not in item:
            raise FormatError(f"typology[{i}] is missing field 'id'")
        nodes.append(
            ErrorTypeNode(
                id=str(item["id"]),
                name=str(item.get("name", item["id"])),
                description=str(item.get("description", "")),
                parent_id=None if item.get("parent_id") is None else str(item["parent_id"]),
                weight=as_fraction(item.get("weight", 1)),
            )
        )

    sev = doc["severity"]
    if not isinstance(sev, dict):
        raise FormatError("severity must be an object")
    _check_fields(sev, {"levels", "critical_auto_fail"}, "severity")
    if not sev.get("levels"):
        raise FormatError("severity is missing field 'levels'")
    levels = []
    for i, item in enumerate(sev["levels"]):
        if not isinstance(item, dict):
            raise FormatError(f"severity.levels[{i}] must be an object")
        _check_fields(item, {"name", "multiplier"}, "severity level")
        if "name" not in item or "multiplier" not in item:
            raise FormatError(f"severity.levels[{i}] needs 'name' and 'multiplier'")
        levels.append(SeverityLevel(str(item["name"]), as_fraction(item["multiplier"])))
    severity = SeveritySystem(tuple(levels), bool(sev.get("critical_auto_fail", False)))

    thresholds = doc.get("range_thresholds") or {}
    if not isinstance(thresholds, dict):
        raise FormatError("range_thresholds must be an object")
    _check_fields(thresholds, {"sqc_max_words", "linear_max_words"}, "range_thresholds")

    curve_doc = doc.get("curve")

    return MetricSpec(
        id=str(doc["id"]),
        typology=tuple(nodes),
        severity=severity,
        pt=as_fraction(doc["pt"]),
        app=as_fraction(doc["app"]),
        msv=as_fraction(doc.get("msv", DEFAULT_MSV)),
        rwc=require_int(doc.get("rwc", DEFAULT_RWC), "rwc"),
        range_thresholds=RangeThresholds(
            sqc_max_words=require_int(
                thresholds.get("sqc_max_words", DEFAULT_SQC_MAX_WORDS), "sqc_max_words"
            ),
            linear_max_words=require_int(
                thresholds.get("linear_max_words", DEFAULT_LINEAR_MAX_WORDS),
                "linear_max_words",
            ),
        ),
        curve=None if curve_doc is None else curve_from_doc(curve_doc),
        rounding_decimals=require_int(
            doc.get("rounding_decimals", DEFAULT_ROUNDING_DECIMALS), "rounding_decimals"
        ),
    )


def load_metric(text: str) -> MetricSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"metric document is not valid JSON: {exc}") from exc
    return metric_from_doc(doc)


def validation_to_doc(report: ValidationReport) -> dict:
    return {
        "valid": report.ok,
        "violations": [{"path": v.path, "message": v.message} for v in report.violations],
    }
