/**
 * DOM wiring for the scorecard and calibration views. All state lives
 * in the view models; this file only renders them and forwards input
 * events.
 */

import { ApiClient } from "./api.js";
import { CalibrationModel, candidateFromBase } from "./calibration.js";
import { buildCurveChart, toSvgPath } from "./chart.js";
import { ScorecardModel, cellKey } from "./scorecard.js";
import type { HistoryItemDoc, MetricDoc } from "./types.js";

const SERVICE_URL =
    new URLSearchParams(window.location.search).get("service") ?? "http://127.0.0.1:8000";

const api = new ApiClient(SERVICE_URL);
const scorecard = new ScorecardModel(api);

function el<T extends HTMLElement>(id: string): T {
    const found = document.getElementById(id);
    if (!found) throw new Error(`missing element #${id}`);
    return found as T;
}

function renderBadge(): void {
    const badge = el<HTMLDivElement>("badge");
    const report = scorecard.state.report;
    const score = scorecard.displayedScore;
    if (!report) {
        badge.textContent = "no score yet";
        badge.className = "badge";
        return;
    }
    if (report.model_used === null) {
        badge.textContent = `${report.selection.range}: use acceptance sampling`;
        badge.className = "badge sqc";
    } else {
        badge.textContent = `${score} / ${report.rating}`;
        badge.className = `badge ${report.rating === "PASS" ? "pass" : "fail"}`;
    }
    if (scorecard.state.stale) badge.className += " stale";
    el<HTMLDivElement>("warnings").textContent = report.warnings.join("\n");
}

function renderGrid(): void {
    const grid = el<HTMLTableElement>("grid");
    const metric = scorecard.state.metric;
    grid.innerHTML = "";
    if (!metric) return;
    const head = grid.insertRow();
    head.insertCell().textContent = "error type";
    for (const column of scorecard.columns) {
        head.insertCell().textContent = column;
    }
    for (const row of scorecard.rows) {
        const tr = grid.insertRow();
        tr.insertCell().textContent = row.name;
        for (const column of scorecard.columns) {
            const cell = tr.insertCell();
            const input = document.createElement("input");
            input.type = "number";
            input.min = "0";
            input.value = String(scorecard.state.counts.get(cellKey(row.id, column)) ?? 0);
            input.addEventListener("input", () => {
                scorecard.setCount(row.id, column, Number(input.value || "0"));
            });
            cell.appendChild(input);
        }
    }
}

async function boot(): Promise<void> {
    const metrics = await api.listMetrics();
    let metric: MetricDoc;
    if (metrics.length > 0) {
        metric = metrics[0];
    } else {
        el<HTMLDivElement>("status").textContent =
            "no metrics stored yet; create one via POST /metrics";
        return;
    }
    scorecard.setMetric(metric);
    renderGrid();

    const ewcInput = el<HTMLInputElement>("ewc");
    ewcInput.addEventListener("input", () => {
        scorecard.setEwc(Number(ewcInput.value));
        el<HTMLDivElement>("ewc-error").textContent = scorecard.state.ewcError ?? "";
    });

    scorecard.onChange(renderBadge);

    const calibration = new CalibrationModel(api, metric);
    el<HTMLButtonElement>("fit").addEventListener("click", () => {
        const rows = el<HTMLTextAreaElement>("points").value.trim().split("\n");
        calibration.points = rows
            .filter((line) => line.includes(","))
            .map((line) => {
                const [words, tolerance] = line.split(",");
                return {
                    sample_words: Number(words),
                    acceptable_penalty_points: Number(tolerance),
                };
            });
        const problem = calibration.pointsProblem();
        const errorBox = el<HTMLDivElement>("fit-error");
        if (problem) {
            errorBox.textContent = problem;
            return;
        }
        errorBox.textContent = "";
        void calibration
            .fit()
            .then((curve) => {
                const width = 600;
                const height = 240;
                const chart = buildCurveChart(curve, metric, metric.rwc);
                const nMax = Math.max(...chart.bands.map((band) => band.to));
                const tMax = Math.max(...chart.curve.map((p) => p.tolerance)) * 1.2;
                const bandsGroup = el<HTMLElement>("bands");
                bandsGroup.innerHTML = "";
                const bandFill: Record<string, string> = {
                    RS: "#f6d7d7", RM: "#e2efe2", RL: "#dbe6f4",
                };
                for (const band of chart.bands) {
                    const rect = document.createElementNS("http://www.w3.org/2000/svg", "rect");
                    rect.setAttribute("x", String((band.from / nMax) * width));
                    rect.setAttribute("width", String(((band.to - band.from) / nMax) * width));
                    rect.setAttribute("y", "0");
                    rect.setAttribute("height", String(height));
                    rect.setAttribute("fill", bandFill[band.range]);
                    const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
                    label.setAttribute("x", String(((band.from + band.to) / 2 / nMax) * width));
                    label.setAttribute("y", "14");
                    label.setAttribute("text-anchor", "middle");
                    label.setAttribute("fill", "#666");
                    label.textContent = band.range;
                    bandsGroup.appendChild(rect);
                    bandsGroup.appendChild(label);
                }
                el<HTMLElement>("curve-path").setAttribute(
                    "d",
                    toSvgPath(chart.curve, width, height, nMax, tMax),
                );
                el<HTMLElement>("tangent-path").setAttribute(
                    "d",
                    toSvgPath(chart.tangent, width, height, nMax, tMax),
                );
                el<HTMLDivElement>("curve-params").textContent =
                    `T(n) = ${curve.a.toFixed(4)}*ln(n) + ${curve.b.toFixed(4)}  ` +
                    `valid [${curve.valid_from}, ${curve.valid_to}]  residual ${curve.fit_residual.toExponential(2)}`;
            })
            .catch((err: Error) => {
                errorBox.textContent = err.message;
            });
    });

    el<HTMLButtonElement>("replay").addEventListener("click", () => {
        const historyText = el<HTMLTextAreaElement>("history").value.trim();
        const errorBox = el<HTMLDivElement>("replay-error");
        if (!historyText) {
            errorBox.textContent = "paste a JSON history first";
            return;
        }
        calibration.loadHistory(JSON.parse(historyText) as HistoryItemDoc[]);
        calibration.candidates = (
            JSON.parse(el<HTMLTextAreaElement>("candidates").value) as {
                id: string;
                pt?: number;
                app?: number;
                weights?: Record<string, number>;
                multipliers?: number[];
            }[]
        ).map((edit) => {
            const candidate = candidateFromBase(metric, edit.id);
            if (edit.pt !== undefined) candidate.pt = edit.pt;
            if (edit.app !== undefined) candidate.app = edit.app;
            Object.assign(candidate.weights, edit.weights ?? {});
            if (edit.multipliers) candidate.multipliers = edit.multipliers;
            return candidate;
        });
        void calibration
            .runReplay()
            .then((results) => {
                const table = el<HTMLTableElement>("ranking");
                table.innerHTML =
                    "<tr><td>candidate</td><td>agreement</td>" +
                    "<td>pass/pass</td><td>pass/fail</td><td>fail/pass</td><td>fail/fail</td></tr>";
                for (const result of results) {
                    const tr = table.insertRow();
                    tr.insertCell().textContent = result.candidate_id;
                    tr.insertCell().textContent = String(result.agreement);
                    tr.insertCell().textContent = String(result.confusion.pass_pass);
                    tr.insertCell().textContent = String(result.confusion.pass_fail);
                    tr.insertCell().textContent = String(result.confusion.fail_pass);
                    tr.insertCell().textContent = String(result.confusion.fail_fail);
                }
                errorBox.textContent = "";
            })
            .catch((err: Error) => {
                errorBox.textContent = err.message;
            });
    });

    el<HTMLDivElement>("status").textContent = `connected to ${SERVICE_URL} (metric ${metric.id})`;
}

void boot().catch((err: Error) => {
    el<HTMLDivElement>("status").textContent = `service unreachable: ${err.message}`;
});
