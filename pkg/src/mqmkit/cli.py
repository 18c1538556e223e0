"""Command-line entry points.

Every subcommand is a thin adapter: it reads files, calls one library
operation, and prints the canonical document to stdout (diagnostics go
to stderr). Identical inputs produce byte-identical output.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .calibration import load_history, replay, replay_result_to_doc, replay_summary_table
from .errors import ConfigError, CurveFitError, FormatError, MqmError
from .model import (
    default_core_metric,
    load_metric,
    metric_to_doc,
    validate_metric,
    validation_to_doc,
)
from .annotation import load_sample
from .routing import select_method, selection_to_doc
from .sampling import find_plan, plan_table, plan_to_doc
from .scoring import MODEL_CHOICES, score_report_to_doc, score_sample
from .tolerance import curve_to_doc, fit_tolerance_curve, parse_tolerance_points

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3

DATA_DIR_ENV = "MQMKIT_DATA_DIR"


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1; argparse defaults to 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: "str | None") -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_doc(doc, out: "str | None") -> None:
    _emit(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", out)


def _score_table(doc: dict) -> str:
    lines = [
        f"sample: {doc['sample_id']}    metric: {doc['metric_id']}",
        "",
        f"{'error type':<28}{'penalty points':>16}",
    ]
    for type_id, value in doc["breakdown"]["etpt_by_type"].items():
        lines.append(f"{type_id:<28}{value:>16}")
    b = doc["breakdown"]
    lines += [
        f"{'absolute penalty total':<28}{b['apt']:>16}",
        f"{'per-word penalty total':<28}{b['pwpt']:>16}",
        f"{'normed penalty total':<28}{b['npt']:>16}",
        "",
        f"scaling factor: {doc['sf']}",
    ]
    rounded = doc["rounded"]
    lines.append(f"raw score:        {rounded['raw_score']}")
    lines.append(f"calibrated score: {rounded['calibrated_score']}")
    if rounded["nonlinear_score"] is not None:
        lines.append(f"nonlinear score:  {rounded['nonlinear_score']}")
    model_used = doc["model_used"] or "none (statistical sampling range)"
    rating = doc["rating"] or "n/a"
    lines.append(f"model used: {model_used}    rating: {rating}")
    sel = doc["selection"]
    lines.append(f"range: {sel['range']} -> {sel['method']} ({sel['rationale']})")
    for warning in doc["warnings"]:
        lines.append(f"warning: {warning}")
    return "\n".join(lines) + "\n"


def _cmd_score(args) -> int:
    spec = load_metric(_read(args.metric))
    sample = load_sample(_read(args.sample))
    report = score_sample(
        sample, spec, model=args.model, extrapolate=args.extrapolate
    )
    doc = score_report_to_doc(report)
    if args.format == "table":
        _emit(_score_table(doc), args.out)
    else:
        _emit_doc(doc, args.out)
    return EXIT_OK


def _cmd_fit(args) -> int:
    major = 5
    if args.metric:
        spec = load_metric(_read(args.metric))
        for level in spec.severity.levels:
            if level.name.lower() == "major":
                major = level.multiplier
                break
    points = parse_tolerance_points(_read(args.points), major_multiplier=major)
    curve = fit_tolerance_curve(points)
    _emit_doc(curve_to_doc(curve), args.out)
    return EXIT_OK


def _cmd_replay(args) -> int:
    history = load_history(_read(args.history))
    candidates = [load_metric(_read(path)) for path in args.candidates]
    results = replay(history, candidates)
    if args.format == "table":
        _emit(replay_summary_table(results), args.out)
    else:
        _emit_doc([replay_result_to_doc(result) for result in results], args.out)
    return EXIT_OK


def _cmd_plan(args) -> int:
    plan = find_plan(
        aql=args.aql,
        rql=args.rql,
        alpha_max=args.alpha,
        beta_max=args.beta,
        n_max=args.n_max,
        unit=args.unit,
    )
    if args.format == "table":
        _emit(plan_table(plan), args.out)
    else:
        _emit_doc(plan_to_doc(plan), args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    spec = load_metric(_read(args.metric))
    report = validate_metric(spec)
    _emit_doc(validation_to_doc(report), args.out)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _cmd_route(args) -> int:
    spec = load_metric(_read(args.metric))
    selection = select_method(args.ewc, spec)
    _emit_doc(selection_to_doc(selection), args.out)
    return EXIT_OK


def _cmd_default_metric(args) -> int:
    _emit_doc(metric_to_doc(default_core_metric()), args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=args.data)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mqmkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"mqmkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="score a sample against a metric")
    score.add_argument("--metric", required=True, help="metric document path")
    score.add_argument("--sample", required=True, help="sample document path (JSON or tabular)")
    score.add_argument("--model", choices=MODEL_CHOICES, default="auto")
    score.add_argument("--extrapolate", action="store_true",
                       help="allow curve use outside its validity range")
    score.add_argument("--format", choices=("doc", "table"), default="doc")
    score.add_argument("--out", help="write output to this path instead of stdout")
    score.set_defaults(func=_cmd_score)

    fit = sub.add_parser("fit", help="fit a tolerance curve from questionnaire points")
    fit.add_argument("--points", required=True, help="questionnaire table path")
    fit.add_argument("--metric", help="metric for page/major-error conversion")
    fit.add_argument("--out")
    fit.set_defaults(func=_cmd_fit)

    rep = sub.add_parser("replay", help="replay historical evaluations against candidates")
    rep.add_argument("--history", required=True, help="history path (JSON or CSV)")
    rep.add_argument("--candidates", required=True, nargs="+", help="candidate metric paths")
    rep.add_argument("--format", choices=("doc", "table"), default="doc")
    rep.add_argument("--out")
    rep.set_defaults(func=_cmd_replay)

    plan = sub.add_parser("plan", help="find a binomial acceptance-sampling plan")
    plan.add_argument("--aql", type=float, required=True)
    plan.add_argument("--rql", type=float, required=True)
    plan.add_argument("--alpha", type=float, required=True)
    plan.add_argument("--beta", type=float, required=True)
    plan.add_argument("--n-max", type=int, default=400)
    plan.add_argument("--unit", choices=("WORD", "SENTENCE"), default="SENTENCE")
    plan.add_argument("--format", choices=("doc", "table"), default="doc")
    plan.add_argument("--out")
    plan.set_defaults(func=_cmd_plan)

    val = sub.add_parser("validate", help="validate a metric document")
    val.add_argument("--metric", required=True)
    val.add_argument("--out")
    val.set_defaults(func=_cmd_validate)

    route = sub.add_parser("route", help="which method applies at a sample size")
    route.add_argument("--metric", required=True)
    route.add_argument("--ewc", type=int, required=True)
    route.add_argument("--out")
    route.set_defaults(func=_cmd_route)

    default = sub.add_parser("default-metric", help="print the bundled default metric")
    default.add_argument("--out")
    default.set_defaults(func=_cmd_default_metric)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--data", default=os.environ.get(DATA_DIR_ENV),
                       help="data directory (default: $MQMKIT_DATA_DIR or ./mqmkit_data)")
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ConfigError, CurveFitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except MqmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
