/**
 * End-to-end checks against the real scoring service. A fresh service
 * process is spawned on a test port with a throwaway data directory;
 * the view models talk to it exactly as the browser would, and a fetch
 * recorder proves every displayed number came off the wire.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, type FetchLike } from "../src/api.js";
import { CalibrationModel } from "../src/calibration.js";
import { buildCurveChart, curveValue } from "../src/chart.js";
import { ScorecardModel } from "../src/scorecard.js";
import type { HistoryItemDoc, MetricDoc, ScoreReportDoc } from "../src/types.js";

const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitForHealth(timeoutMs = 20000): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        try {
            const response = await fetch(`${BASE}/health`);
            if (response.ok) return;
        } catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 200));
    }
    throw new Error("scoring service did not come up");
}

beforeAll(async () => {
    const dataDir = mkdtempSync(join(tmpdir(), "mqmkit-ui-test-"));
    service = spawn(
        "python3",
        ["-m", "mqmkit.cli", "serve", "--port", String(PORT), "--data", dataDir],
        { stdio: "ignore" },
    );
    await waitForHealth();
}, 30000);

afterAll(() => {
    service?.kill();
});

async function fetchDefaultMetric(api: ApiClient): Promise<MetricDoc> {
    // the service ships no metrics; create the documented default setup
    const metric: MetricDoc = {
        id: "mqm-core-default",
        typology: [
            { id: "terminology", name: "Terminology", description: "", parent_id: null, weight: 1 },
            { id: "accuracy", name: "Accuracy", description: "", parent_id: null, weight: 1 },
            { id: "linguistic_conventions", name: "Linguistic Conventions", description: "", parent_id: null, weight: 1 },
            { id: "style", name: "Style", description: "", parent_id: null, weight: 1 },
            { id: "locale_conventions", name: "Locale Conventions", description: "", parent_id: null, weight: 1 },
            { id: "audience_appropriateness", name: "Audience Appropriateness", description: "", parent_id: null, weight: 1 },
            { id: "design_markup", name: "Design and Markup", description: "", parent_id: null, weight: 1 },
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
    const created = await api.createMetric(metric);
    return api.getMetric(created.id);
}

describe("live scorecard against the real service", () => {
    it("reproduces 88.3 / PASS for the worked example, numbers straight off the wire", async () => {
        const rawBodies: string[] = [];
        const recordingFetch: FetchLike = async (url, init) => {
            const response = await fetch(url, init);
            const text = await response.text();
            rawBodies.push(text);
            return new Response(text, {
                status: response.status,
                headers: { "content-type": "application/json" },
            });
        };
        const api = new ApiClient(BASE, recordingFetch);
        const metric = await fetchDefaultMetric(api);

        const model = new ScorecardModel(api, 0);
        model.setMetric(metric);
        model.setEwc(2500);
        model.setCount("accuracy", "Minor", 4);
        model.setCount("accuracy", "Major", 7);
        await model.send();

        const lastWireBody = JSON.parse(rawBodies[rawBodies.length - 1]) as ScoreReportDoc;
        expect(model.state.report).toEqual(lastWireBody); // byte-for-byte off the wire
        expect(model.displayedScore).toBe(lastWireBody.rounded.calibrated_score);
        expect(model.displayedScore).toBe(88.3);
        expect(model.state.report!.rating).toBe("PASS");
        expect(lastWireBody.breakdown.npt).toBe(15.6);
    });

    it("clearing all counts scores the msv and passes", async () => {
        const api = new ApiClient(BASE);
        const metric = await fetchDefaultMetric(api);
        const model = new ScorecardModel(api, 0);
        model.setMetric(metric);
        model.setEwc(1000);
        model.clearCounts();
        await model.send();
        expect(model.displayedScore).toBe(100);
        expect(model.state.report!.rating).toBe("PASS");
    });
});

describe("curve view against the real service", () => {
    it("renders the two-point fit through both input points", async () => {
        const api = new ApiClient(BASE);
        const metric = await fetchDefaultMetric(api);
        const model = new CalibrationModel(api, metric);
        model.points = [
            { sample_words: 250, acceptable_penalty_points: 5 },
            { sample_words: 1750, acceptable_penalty_points: 17.5 },
        ];
        const curve = await model.fit();
        expect(curve.a).toBeCloseTo(6.4237, 4);
        expect(curve.b).toBeCloseTo(-30.468, 3);

        const chart = buildCurveChart(curve, metric, metric.rwc);
        expect(chart.curve[0].tolerance).toBeCloseTo(5, 6);
        expect(chart.curve[chart.curve.length - 1].tolerance).toBeCloseTo(17.5, 6);
        expect(curveValue(curve, 250)).toBeCloseTo(5, 6);
        expect(curveValue(curve, 1750)).toBeCloseTo(17.5, 6);
    });

    it("surfaces fit errors verbatim from the service", async () => {
        const api = new ApiClient(BASE);
        const metric = await fetchDefaultMetric(api);
        const model = new CalibrationModel(api, metric);
        model.points = [
            { sample_words: 1000, acceptable_penalty_points: 10 },
            { sample_words: 2000, acceptable_penalty_points: 5 },
        ];
        await expect(model.fit()).rejects.toThrow(/a must be > 0/);
    });
});

describe("what-if replay against the real service", () => {
    it("reproduces the separable-history ranking", async () => {
        const api = new ApiClient(BASE);
        const metric = await fetchDefaultMetric(api);
        const model = new CalibrationModel(api, metric);

        const history: HistoryItemDoc[] = [];
        for (let npt = 2; npt <= 20; npt += 2) {
            history.push({
                sample: {
                    id: `h${npt}`,
                    ewc: 1000,
                    cells: [{ error_type_id: "accuracy", severity_name: "Minor", count: npt }],
                    metadata: {},
                },
                holistic_rating: npt <= 10 ? "PASS" : "FAIL",
            });
        }
        model.loadHistory(history);
        for (const app of [2, 6, 10, 14, 18]) {
            const edit = model.addCandidate(`app${app}`);
            edit.app = app;
        }
        await model.runReplay();
        expect(model.ranking[0].candidate_id).toBe("app10");
        expect(model.ranking[0].agreement).toBe(1);
        for (const row of model.ranking.slice(1)) {
            expect(row.agreement).toBeLessThan(1);
        }
    });
});
