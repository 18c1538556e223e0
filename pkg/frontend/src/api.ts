/**
 * Thin typed client for the scoring service. All math happens server
 * side; this module only moves canonical documents back and forth.
 */

import type {
    HistoryItemDoc,
    MetricDoc,
    ReplayResultDoc,
    SampleDoc,
    ScoreReportDoc,
    SelectionDoc,
    ToleranceCurveDoc,
    TolerancePointDoc,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
    constructor(
        public status: number,
        public code: string,
        message: string,
        public details: { path: string; message: string }[] | null = null,
    ) {
        super(message);
    }
}

export class ApiClient {
    constructor(
        private baseUrl: string,
        private fetchImpl: FetchLike = (url, init) => fetch(url, init),
    ) {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
            method,
            headers: body === undefined ? {} : { "content-type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        const payload = await response.json();
        if (!response.ok) {
            const err = payload as { code?: string; message?: string; details?: never[] };
            throw new ApiError(
                response.status,
                err.code ?? "error",
                err.message ?? `request failed with ${response.status}`,
                err.details ?? null,
            );
        }
        return payload as T;
    }

    health(): Promise<{ status: string; version: string }> {
        return this.request("GET", "/health");
    }

    createMetric(metric: MetricDoc): Promise<{ id: string; metric: MetricDoc }> {
        return this.request("POST", "/metrics", metric);
    }

    listMetrics(): Promise<MetricDoc[]> {
        return this.request("GET", "/metrics");
    }

    getMetric(id: string): Promise<MetricDoc> {
        return this.request("GET", `/metrics/${encodeURIComponent(id)}`);
    }

    score(body: {
        metric_id?: string;
        metric?: MetricDoc;
        sample: SampleDoc;
        model?: "raw" | "calibrated" | "nonlinear" | "auto";
    }): Promise<ScoreReportDoc> {
        return this.request("POST", "/score", body);
    }

    fitCurve(points: TolerancePointDoc[]): Promise<ToleranceCurveDoc> {
        return this.request("POST", "/calibration/fit", { points });
    }

    replay(history: HistoryItemDoc[], candidates: MetricDoc[]): Promise<ReplayResultDoc[]> {
        return this.request("POST", "/calibration/replay", { history, candidates });
    }

    route(body: { ewc: number; metric?: MetricDoc; metric_id?: string }): Promise<SelectionDoc> {
        return this.request("POST", "/route", body);
    }
}
