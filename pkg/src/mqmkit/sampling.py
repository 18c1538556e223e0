"""Binomial acceptance sampling for the small-sample range.

A plan (n, c) inspects n units and accepts the lot when at most c are
defective. The lot here is a translation, a unit is a sentence (or a
word), and a defect is an error at Major severity or worse; minor slips
do not make a sentence defective. The binomial model treats the sample
as drawn from an effectively unlimited population, which is adequate at
desk scale.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import PlanSearchError

Unit = Literal["WORD", "SENTENCE"]

# one page is roughly 15-17 sentences per 250 words
WORDS_PER_SENTENCE = 15

DEFAULT_N_MAX = 400


def acceptance_probability(n: int, c: int, p: float) -> float:
    """P(accept) = sum_{k=0..c} C(n,k) p^k (1-p)^(n-k).

    Terms come from the stable ratio recurrence and are totaled with
    math.fsum, so no precision is lost to accumulation order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= c <= n:
        raise ValueError("c must satisfy 0 <= c <= n")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be a probability in [0, 1]")
    if c == n or p == 0.0:
        return 1.0  # every outcome accepted / no defects possible
    if p == 1.0:
        return 0.0
    q = 1.0 - p
    ratio = p / q
    term = q**n
    terms = [term]
    for k in range(c):
        term *= (n - k) / (k + 1) * ratio
        terms.append(term)
    return min(math.fsum(terms), 1.0)


@dataclass(frozen=True)
class SamplingPlan:
    """An (n, c) attribute plan with its realized risks.

    producer_risk (alpha) is the chance of rejecting a lot at the
    acceptable quality level; consumer_risk (beta) the chance of
    accepting one at the rejectable level.
    """

    n: int
    c: int
    unit: Unit
    aql: float
    rql: float
    producer_risk: float
    consumer_risk: float


def _check_plan_inputs(aql: float, rql: float, alpha_max: float, beta_max: float) -> None:
    if not 0.0 < aql < 1.0:
        raise ValueError("aql must be in (0, 1)")
    if not 0.0 < rql < 1.0:
        raise ValueError("rql must be in (0, 1)")
    if rql <= aql:
        raise ValueError("rql must exceed aql (rejectable quality is worse than acceptable)")
    if not 0.0 < alpha_max <= 1.0 or not 0.0 < beta_max <= 1.0:
        raise ValueError("risk bounds must be in (0, 1]")


def find_plan(
    aql: float,
    rql: float,
    alpha_max: float,
    beta_max: float,
    n_max: int = DEFAULT_N_MAX,
    unit: Unit = "SENTENCE",
) -> SamplingPlan:
    """Smallest plan meeting both risk bounds (ties broken by smallest c).

    Exhaustive search over n <= n_max, c <= n: for each n, the smallest c
    already gives the lowest consumer risk among alpha-feasible choices,
    so the first hit in (n, c) order is the minimum.
    """
    _check_plan_inputs(aql, rql, alpha_max, beta_max)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    for n in range(1, n_max + 1):
        for c in range(0, n + 1):
            alpha = 1.0 - acceptance_probability(n, c, aql)
            if alpha > alpha_max:
                # alpha shrinks as c grows; keep raising c
                continue
            beta = acceptance_probability(n, c, rql)
            if beta <= beta_max:
                return SamplingPlan(
                    n=n,
                    c=c,
                    unit=unit,
                    aql=aql,
                    rql=rql,
                    producer_risk=alpha,
                    consumer_risk=beta,
                )
            # beta only grows with c; no larger c can work at this n
            break
    raise PlanSearchError(
        f"no plan with n <= {n_max} meets alpha <= {alpha_max} and beta <= {beta_max}"
    )


def oc_curve(n: int, c: int, p_grid: Iterable[float]) -> list:
    """Operating characteristic: (p, acceptance probability) per grid point."""
    return [(p, acceptance_probability(n, c, p)) for p in p_grid]


def words_to_units(words: int, unit: Unit, words_per_sentence: int = WORDS_PER_SENTENCE) -> int:
    """How many inspectable units a word count provides."""
    if unit == "WORD":
        return words
    return max(1, round(words / words_per_sentence))


def plan_to_doc(plan: SamplingPlan) -> dict:
    return {
        "n": plan.n,
        "c": plan.c,
        "unit": plan.unit,
        "aql": plan.aql,
        "rql": plan.rql,
        "producer_risk": plan.producer_risk,
        "consumer_risk": plan.consumer_risk,
    }


def oc_table(points) -> str:
    """OC curve as plottable tabular text."""
    lines = ["p,acceptance_probability"]
    lines.extend(f"{p},{pa}" for p, pa in points)
    return "\n".join(lines) + "\n"


def plan_table(plan: SamplingPlan, oc_points: int = 9) -> str:
    """Plan summary plus a small OC table spanning aql..rql."""
    lines = [
        f"plan: inspect n={plan.n} {plan.unit.lower()}s, accept at most c={plan.c} defective",
        f"producer risk (alpha) at aql={plan.aql}: {plan.producer_risk:.6f}",
        f"consumer risk (beta) at rql={plan.rql}: {plan.consumer_risk:.6f}",
        "",
    ]
    step = (plan.rql - plan.aql) / (oc_points - 1)
    grid = [plan.aql + i * step for i in range(oc_points)]
    lines.append(oc_table(oc_curve(plan.n, plan.c, grid)).rstrip("\n"))
    return "\n".join(lines) + "\n"
