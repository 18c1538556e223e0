"""HTTP facade over the scoring engine.

Scoring endpoints are pure: a /score call with an inline metric touches
no state and is reproducible against an empty store. The store is only
involved when metrics are created or referenced by id.
"""

import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..annotation import sample_from_doc
from ..calibration import history_from_doc, replay, replay_result_to_doc
from ..errors import (
    ConfigError,
    CurveFitError,
    FormatError,
    MqmError,
    NotFoundError,
    PlanSearchError,
    ValidityRangeError,
)
from ..model import (
    MetricValidationError,
    metric_from_doc,
    metric_to_doc,
    validate_metric,
)
from ..routing import select_method, selection_to_doc
from ..sampling import find_plan, plan_to_doc
from ..scoring import score_report_to_doc, score_sample
from ..store import EntityStore
from ..tolerance import TolerancePoint, curve_to_doc, fit_tolerance_curve
from .schemas import (
    FitRequest,
    HealthDoc,
    MetricCreatedDoc,
    MetricDoc,
    PlanDoc,
    PlanRequest,
    ReplayRequest,
    ReplayResultDoc,
    RouteRequest,
    ScoreReportDoc,
    ScoreRequest,
    SelectionDoc,
    ToleranceCurveDoc,
)

DEFAULT_DATA_DIR = "mqmkit_data"
DATA_DIR_ENV = "MQMKIT_DATA_DIR"
CORS_ENV = "MQMKIT_CORS_ORIGINS"


def _error_body(status: int, code: str, message: str, details=None) -> JSONResponse:
    body = {"status": status, "code": code, "message": message, "details": details}
    return JSONResponse(status_code=status, content=body)


def create_app(data_dir=None, cors_origins=None) -> FastAPI:
    store = EntityStore(data_dir or os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR))
    app = FastAPI(title="mqmkit", version=__version__)
    app.state.store = store

    if cors_origins is None:
        cors_origins = os.environ.get(CORS_ENV, "*").split(",")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        details = [
            {"path": ".".join(str(part) for part in err.get("loc", ())), "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return _error_body(400, "malformed_body", "request body is malformed", details)

    @app.exception_handler(MetricValidationError)
    async def invalid_metric(request: Request, exc: MetricValidationError):
        details = [{"path": v.path, "message": v.message} for v in exc.report.violations]
        return _error_body(422, "validation_failed", str(exc), details)

    @app.exception_handler(NotFoundError)
    async def not_found(request: Request, exc: NotFoundError):
        return _error_body(404, "not_found", str(exc))

    @app.exception_handler(PlanSearchError)
    async def no_plan(request: Request, exc: PlanSearchError):
        return _error_body(422, "no_feasible_plan", str(exc))

    @app.exception_handler(ValidityRangeError)
    async def out_of_range(request: Request, exc: ValidityRangeError):
        return _error_body(422, "outside_validity_range", str(exc))

    @app.exception_handler(CurveFitError)
    async def bad_fit(request: Request, exc: CurveFitError):
        return _error_body(422, "curve_fit_failed", str(exc))

    @app.exception_handler(FormatError)
    async def bad_document(request: Request, exc: FormatError):
        return _error_body(422, "validation_failed", str(exc))

    @app.exception_handler(ConfigError)
    async def bad_config(request: Request, exc: ConfigError):
        return _error_body(422, "validation_failed", str(exc))

    @app.exception_handler(ValueError)
    async def bad_value(request: Request, exc: ValueError):
        return _error_body(422, "validation_failed", str(exc))

    @app.exception_handler(MqmError)
    async def engine_error(request: Request, exc: MqmError):
        return _error_body(500, "computation_error", str(exc))

    def _resolve_metric(metric_doc, metric_id):
        if metric_doc is not None:
            spec = metric_from_doc(metric_doc.model_dump())
        elif metric_id is not None:
            spec = metric_from_doc(store.get("METRIC", metric_id).body)
        else:
            raise FormatError("provide either 'metric' or 'metric_id'")
        report = validate_metric(spec)
        if not report.ok:
            raise MetricValidationError(report)
        return spec

    @app.get("/health", response_model=HealthDoc)
    def health():
        return HealthDoc(status="ok", version=__version__)

    @app.post("/metrics", response_model=MetricCreatedDoc, status_code=201)
    def create_metric(metric: MetricDoc):
        spec = metric_from_doc(metric.model_dump())
        report = validate_metric(spec)
        if not report.ok:
            raise MetricValidationError(report)
        doc = metric_to_doc(spec)
        store.put("METRIC", spec.id, doc)
        return MetricCreatedDoc(id=spec.id, metric=MetricDoc.model_validate(doc))

    @app.get("/metrics", response_model=list[MetricDoc])
    def list_metrics():
        return [
            MetricDoc.model_validate(entity.body) for entity in store.list("METRIC")
        ]

    @app.get("/metrics/{metric_id}", response_model=MetricDoc)
    def get_metric(metric_id: str):
        return MetricDoc.model_validate(store.get("METRIC", metric_id).body)

    @app.post("/score", response_model=ScoreReportDoc)
    def score(request: ScoreRequest):
        spec = _resolve_metric(request.metric, request.metric_id)
        sample = sample_from_doc(request.sample.model_dump())
        report = score_sample(
            sample, spec, model=request.model, extrapolate=request.extrapolate
        )
        return ScoreReportDoc.model_validate(score_report_to_doc(report))

    @app.post("/calibration/fit", response_model=ToleranceCurveDoc)
    def fit(request: FitRequest):
        points = [
            TolerancePoint(p.sample_words, float(p.acceptable_penalty_points))
            for p in request.points
        ]
        curve = fit_tolerance_curve(points)
        return ToleranceCurveDoc.model_validate(curve_to_doc(curve))

    @app.post("/calibration/replay", response_model=list[ReplayResultDoc])
    def run_replay(request: ReplayRequest):
        history = history_from_doc([item.model_dump() for item in request.history])
        candidates = [metric_from_doc(doc.model_dump()) for doc in request.candidates]
        results = replay(history, candidates)
        return [
            ReplayResultDoc.model_validate(replay_result_to_doc(result))
            for result in results
        ]

    @app.post("/sampling/plan", response_model=PlanDoc)
    def plan(request: PlanRequest):
        found = find_plan(
            aql=request.aql,
            rql=request.rql,
            alpha_max=request.alpha,
            beta_max=request.beta,
            n_max=request.n_max,
            unit=request.unit,
        )
        return PlanDoc.model_validate(plan_to_doc(found))

    @app.post("/route", response_model=SelectionDoc)
    def route(request: RouteRequest):
        spec = _resolve_metric(request.metric, request.metric_id)
        selection = select_method(request.ewc, spec)
        return SelectionDoc.model_validate(selection_to_doc(selection))

    return app
