/**
 * Document types mirroring the scoring service's canonical JSON.
 * Every numeric value displayed in the UI originates from one of these
 * response documents; the client never computes a score itself.
 */

export interface ErrorTypeNodeDoc {
    id: string;
    name: string;
    description: string;
    parent_id: string | null;
    weight: number;
}

export interface SeverityLevelDoc {
    name: string;
    multiplier: number;
}

export interface SeveritySystemDoc {
    levels: SeverityLevelDoc[];
    critical_auto_fail: boolean;
}

export interface RangeThresholdsDoc {
    sqc_max_words: number;
    linear_max_words: number;
}

export interface TolerancePointDoc {
    sample_words: number;
    acceptable_penalty_points: number;
}

export interface ToleranceCurveDoc {
    a: number;
    b: number;
    valid_from: number;
    valid_to: number;
    fit_residual: number;
    source_points: TolerancePointDoc[];
}

export interface MetricDoc {
    id: string;
    typology: ErrorTypeNodeDoc[];
    severity: SeveritySystemDoc;
    msv: number;
    rwc: number;
    pt: number;
    app: number;
    range_thresholds: RangeThresholdsDoc;
    curve: ToleranceCurveDoc | null;
    rounding_decimals: number;
}

export interface SampleCellDoc {
    error_type_id: string;
    severity_name: string;
    count: number;
}

export interface SampleDoc {
    id: string;
    ewc: number;
    cells: SampleCellDoc[];
    metadata: Record<string, string>;
}

export type Rating = "PASS" | "FAIL";
export type Method = "SQC" | "LINEAR" | "NONLINEAR";
export type SizeRange = "RS" | "RM" | "RL";

export interface SelectionDoc {
    method: Method;
    range: SizeRange;
    rationale: string;
    warnings: string[];
}

export interface ScoreReportDoc {
    sample_id: string;
    metric_id: string;
    breakdown: {
        etpt_by_type: Record<string, number>;
        apt: number;
        pwpt: number;
        npt: number;
    };
    sf: number;
    raw_score: number;
    calibrated_score: number;
    nonlinear_score: number | null;
    rating: Rating | null;
    model_used: "RAW" | "CALIBRATED" | "NONLINEAR" | null;
    selection: SelectionDoc;
    warnings: string[];
    rounded: {
        raw_score: number | null;
        calibrated_score: number | null;
        nonlinear_score: number | null;
    };
}

export interface HistoryItemDoc {
    sample: SampleDoc;
    holistic_rating: Rating;
}

export interface ConfusionDoc {
    pass_pass: number;
    pass_fail: number;
    fail_pass: number;
    fail_fail: number;
}

export interface ReplayResultDoc {
    candidate_id: string;
    agreement: number;
    confusion: ConfusionDoc;
    per_sample: {
        sample_id: string;
        computed_rating: Rating;
        holistic_rating: Rating;
        score: number;
    }[];
}

export interface ApiErrorDoc {
    status: number;
    code: string;
    message: string;
    details: { path: string; message: string }[] | null;
}
