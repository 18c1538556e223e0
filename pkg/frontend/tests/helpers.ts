/** Shared test fixtures: a metric document and canned service responses. */

import type { MetricDoc, ScoreReportDoc } from "../src/types.js";

export function defaultMetric(): MetricDoc {
    return {
        id: "mqm-core-default",
        typology: [
            { id: "terminology", name: "Terminology", description: "", parent_id: null, weight: 1 },
            { id: "accuracy", name: "Accuracy", description: "", parent_id: null, weight: 1 },
            { id: "style", name: "Style", description: "", parent_id: null, weight: 1 },
        ],
        severity: {
            levels: [
                { name: "Neutral", multiplier: 0 },
                { name: "Minor", multiplier: 1 },
                { name: "Major", multiplier: 5 },
                { name: "Critical", multiplier: 25 },
            ],
            critical_auto_fail: false,
        },
        msv: 100,
        rwc: 1000,
        pt: 85,
        app: 20,
        range_thresholds: { sqc_max_words: 250, linear_max_words: 5000 },
        curve: null,
        rounding_decimals: 2,
    };
}

export function cannedReport(overrides: Partial<ScoreReportDoc> = {}): ScoreReportDoc {
    return {
        sample_id: "scorecard",
        metric_id: "mqm-core-default",
        breakdown: { etpt_by_type: { accuracy: 39 }, apt: 39, pwpt: 0.0156, npt: 15.6 },
        sf: 0.75,
        raw_score: 98.44,
        calibrated_score: 88.3,
        nonlinear_score: null,
        rating: "PASS",
        model_used: "CALIBRATED",
        selection: { method: "LINEAR", range: "RM", rationale: "", warnings: [] },
        warnings: [],
        rounded: { raw_score: 98.44, calibrated_score: 88.3, nonlinear_score: null },
        ...overrides,
    };
}

export function jsonResponse(body: unknown, status = 200): Response {
    return new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
    });
}
