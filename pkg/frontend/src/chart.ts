/**
 * Chart geometry for the tolerance-curve view: polylines for the fitted
 * curve and its linear tangent, plus the RS/RM/RL band boundaries. This
 * renders the curve object the service returned; no score is computed
 * here.
 */

import type { MetricDoc, ToleranceCurveDoc } from "./types.js";

export interface ChartPoint {
    n: number;
    tolerance: number;
}

export interface CurveChartData {
    curve: ChartPoint[];
    tangent: ChartPoint[];
    tangentAt: number;
    sourcePoints: ChartPoint[];
    bands: { range: "RS" | "RM" | "RL"; from: number; to: number }[];
}

export function curveValue(curve: ToleranceCurveDoc, n: number): number {
    return curve.a * Math.log(n) + curve.b;
}

/**
 * Sample the fitted curve across its validity range and draw the
 * straight line through the origin that touches it at tangentAt (the
 * linear model's tolerance when calibrated at that size).
 */
export function buildCurveChart(
    curve: ToleranceCurveDoc,
    metric: MetricDoc,
    tangentAt: number,
    samples = 100,
): CurveChartData {
    const from = curve.valid_from;
    const to = curve.valid_to;
    const step = (to - from) / (samples - 1);
    const points: ChartPoint[] = [];
    for (let i = 0; i < samples; i++) {
        const n = from + i * step;
        points.push({ n, tolerance: curveValue(curve, n) });
    }
    const slope = curveValue(curve, tangentAt) / tangentAt;
    const tangent: ChartPoint[] = [
        { n: from, tolerance: slope * from },
        { n: to, tolerance: slope * to },
    ];
    const { sqc_max_words, linear_max_words } = metric.range_thresholds;
    const end = Math.max(to, linear_max_words + 1);
    return {
        curve: points,
        tangent,
        tangentAt,
        sourcePoints: curve.source_points.map((p) => ({
            n: p.sample_words,
            tolerance: p.acceptable_penalty_points,
        })),
        bands: [
            { range: "RS", from: 0, to: sqc_max_words },
            { range: "RM", from: sqc_max_words, to: linear_max_words },
            { range: "RL", from: linear_max_words, to: end },
        ],
    };
}

/** Map chart points into an SVG path string for a fixed viewport. */
export function toSvgPath(
    points: ChartPoint[],
    width: number,
    height: number,
    nMax: number,
    toleranceMax: number,
): string {
    return points
        .map((point, i) => {
            const x = (point.n / nMax) * width;
            const y = height - (point.tolerance / toleranceMax) * height;
            return `${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`;
        })
        .join(" ");
}
