/**
 * Calibration workbench view model: what-if replay of candidate
 * parameter sets against an uploaded history, and tolerance-curve
 * fitting with a chart of the fitted curve, its linear tangent, and the
 * three sample-size ranges. Agreement numbers and curve parameters all
 * come from service responses.
 */

import { ApiClient } from "./api.js";
import type {
    HistoryItemDoc,
    MetricDoc,
    ReplayResultDoc,
    ToleranceCurveDoc,
    TolerancePointDoc,
} from "./types.js";

export interface CandidateEdit {
    id: string;
    pt: number;
    app: number;
    weights: Record<string, number>;
    multipliers: number[];
}

export function candidateFromBase(base: MetricDoc, id: string): CandidateEdit {
    return {
        id,
        pt: base.pt,
        app: base.app,
        weights: Object.fromEntries(base.typology.map((node) => [node.id, node.weight])),
        multipliers: base.severity.levels.map((level) => level.multiplier),
    };
}

export function candidateToMetric(base: MetricDoc, edit: CandidateEdit): MetricDoc {
    return {
        ...base,
        id: edit.id,
        pt: edit.pt,
        app: edit.app,
        typology: base.typology.map((node) => ({
            ...node,
            weight: edit.weights[node.id] ?? node.weight,
        })),
        severity: {
            ...base.severity,
            levels: base.severity.levels.map((level, i) => ({
                ...level,
                multiplier: edit.multipliers[i] ?? level.multiplier,
            })),
        },
    };
}

export class CalibrationModel {
    history: HistoryItemDoc[] | null = null;
    candidates: CandidateEdit[] = [];
    results: ReplayResultDoc[] | null = null;
    points: TolerancePointDoc[] = [];
    curve: ToleranceCurveDoc | null = null;
    error: string | null = null;

    constructor(
        private api: ApiClient,
        public base: MetricDoc,
    ) {}

    get replayEnabled(): boolean {
        return this.history !== null && this.history.length > 0 && this.candidates.length > 0;
    }

    loadHistory(history: HistoryItemDoc[]): void {
        this.history = history;
    }

    addCandidate(id: string): CandidateEdit {
        const edit = candidateFromBase(this.base, id);
        this.candidates.push(edit);
        return edit;
    }

    /** Replay all candidates; results come back ranked by agreement. */
    async runReplay(): Promise<ReplayResultDoc[]> {
        if (!this.replayEnabled || !this.history) {
            throw new Error("upload a history and define at least one candidate first");
        }
        const metrics = this.candidates.map((edit) => candidateToMetric(this.base, edit));
        const results = await this.api.replay(this.history, metrics);
        this.results = [...results].sort((a, b) => b.agreement - a.agreement);
        return this.results;
    }

    get ranking(): { candidate_id: string; agreement: number }[] {
        return (this.results ?? []).map((result) => ({
            candidate_id: result.candidate_id,
            agreement: result.agreement,
        }));
    }

    /** Needs two distinct sizes; invalid input sends no request. */
    pointsProblem(): string | null {
        const sizes = new Set(this.points.map((point) => point.sample_words));
        if (sizes.size < 2) return "enter at least two points with distinct sample sizes";
        return null;
    }

    async fit(): Promise<ToleranceCurveDoc> {
        const problem = this.pointsProblem();
        if (problem) throw new Error(problem);
        this.curve = await this.api.fitCurve(this.points);
        return this.curve;
    }
}
