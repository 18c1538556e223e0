"""Sample-size range routing: which measurement method is trustworthy.

Small samples (RS) carry too much annotation uncertainty for analytic
scores and belong to acceptance sampling; medium samples (RM) support
the linear calibrated model near its calibration size; large samples
(RL) need the non-linear model because per-word error tolerance shrinks
as readers work through more text.
"""

from dataclasses import dataclass
from typing import Literal

from .errors import FormatError
from .model import MetricSpec

Method = Literal["SQC", "LINEAR", "NONLINEAR"]
SizeRange = Literal["RS", "RM", "RL"]

# Half-width of the window around the calibration size (as a fraction of
# it) inside which the linear model is preferred over the curve.
DEFAULT_TANGENT_WINDOW = 0.5


@dataclass(frozen=True)
class MethodSelection:
    method: Method
    range: SizeRange
    rationale: str
    warnings: tuple[str, ...] = ()


def select_method(
    ewc: int, spec: MetricSpec, tangent_window: float = DEFAULT_TANGENT_WINDOW
) -> MethodSelection:
    """Route an evaluation word count to a measurement method.

    Total over positive ewc: every size maps to exactly one range, with
    both boundaries inclusive on the lower side (ewc == sqc_max_words is
    still RS, ewc == linear_max_words is still RM).
    """
    if ewc < 1:
        raise FormatError("ewc must be >= 1")
    thresholds = spec.range_thresholds
    has_curve = spec.curve is not None

    if ewc <= thresholds.sqc_max_words:
        return MethodSelection(
            method="SQC",
            range="RS",
            rationale=(
                f"{ewc} words is at or below the small-range boundary "
                f"({thresholds.sqc_max_words}); analytic scores are unreliable at "
                "this size and acceptance sampling applies"
            ),
        )

    if ewc <= thresholds.linear_max_words:
        near = abs(ewc - spec.rwc) <= tangent_window * spec.rwc
        if near:
            return MethodSelection(
                method="LINEAR",
                range="RM",
                rationale=(
                    f"{ewc} words is within {int(tangent_window * 100)}% of the "
                    f"{spec.rwc}-word calibration size; the linear calibrated model is valid"
                ),
            )
        if has_curve:
            return MethodSelection(
                method="NONLINEAR",
                range="RM",
                rationale=(
                    f"{ewc} words is outside the linear calibration window around "
                    f"{spec.rwc} words; the tolerance curve models this size directly"
                ),
            )
        return MethodSelection(
            method="LINEAR",
            range="RM",
            rationale=(
                f"{ewc} words is outside the linear calibration window around "
                f"{spec.rwc} words and no tolerance curve is configured"
            ),
            warnings=(
                "linear model applied outside its calibration window; the score may "
                "not match reviewer perception at this size",
            ),
        )

    if has_curve:
        return MethodSelection(
            method="NONLINEAR",
            range="RL",
            rationale=(
                f"{ewc} words exceeds the linear-range boundary "
                f"({thresholds.linear_max_words}); only the non-linear model scales here"
            ),
        )
    return MethodSelection(
        method="LINEAR",
        range="RL",
        rationale=(
            f"{ewc} words exceeds the linear-range boundary "
            f"({thresholds.linear_max_words}) but no tolerance curve is configured"
        ),
        warnings=(
            "OUT OF VALIDITY: the linear model is not valid beyond "
            f"{thresholds.linear_max_words} words; configure a tolerance curve",
        ),
    )


def selection_to_doc(selection: MethodSelection) -> dict:
    return {
        "method": selection.method,
        "range": selection.range,
        "rationale": selection.rationale,
        "warnings": list(selection.warnings),
    }
