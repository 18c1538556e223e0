"""Evaluation samples: a word count plus per-type, per-severity error counts.

Samples carry counts, not error spans; that is all the scoring math
consumes. The error type and severity names are resolved against a
metric only at scoring time, so a sample document stands on its own.
"""

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import FormatError
from .numeric import require_int

TABLE_HEADER = ("error_type_id", "severity", "count")
DEFAULT_SAMPLE_ID = "sample"


@dataclass(frozen=True)
class ErrorCountCell:
    error_type_id: str
    severity_name: str
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise FormatError("count must be >= 0")


@dataclass(frozen=True)
class EvaluationSample:
    """One scorecard: evaluated word count (source words) and error cells."""

    id: str
    ewc: int
    cells: tuple[ErrorCountCell, ...] = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.ewc < 1:
            raise FormatError("ewc must be >= 1")
        seen = set()
        for cell in self.cells:
            key = (cell.error_type_id, cell.severity_name)
            if key in seen:
                raise FormatError(
                    f"duplicate cell for ({cell.error_type_id}, {cell.severity_name})"
                )
            seen.add(key)

    @property
    def total_error_count(self) -> int:
        return sum(cell.count for cell in self.cells)


def sample_from_doc(doc: dict) -> EvaluationSample:
    """Parse the canonical sample document. Unknown fields are rejected."""
    if not isinstance(doc, dict):
        raise FormatError("sample document must be an object")
    for key in doc:
        if key not in {"id", "ewc", "cells", "metadata"}:
            raise FormatError(f"unknown sample field {key!r}")
    if "ewc" not in doc:
        raise FormatError("sample is missing field 'ewc'")
    cells = []
    for i, item in enumerate(doc.get("cells", [])):
        if not isinstance(item, dict):
            raise FormatError(f"cells[{i}] must be an object")
        for key in item:
            if key not in {"error_type_id", "severity_name", "count"}:
                raise FormatError(f"unknown cell field {key!r}")
        for required in ("error_type_id", "severity_name", "count"):
            if required not in item:
                raise FormatError(f"cells[{i}] is missing field {required!r}")
        cells.append(
            ErrorCountCell(
                error_type_id=str(item["error_type_id"]),
                severity_name=str(item["severity_name"]),
                count=require_int(item["count"], "count"),
            )
        )
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise FormatError("metadata must be an object of strings")
    return EvaluationSample(
        id=str(doc.get("id", DEFAULT_SAMPLE_ID)),
        ewc=require_int(doc["ewc"], "ewc"),
        cells=tuple(cells),
        metadata={str(k): str(v) for k, v in metadata.items()},
    )


def _sample_from_table(text: str) -> EvaluationSample:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if len(rows) < 2:
        raise FormatError("tabular sample needs an ewc row and a header row")
    if len(rows[0]) != 2 or rows[0][0].strip() != "ewc":
        raise FormatError("first row must be 'ewc,<n>'")
    try:
        ewc = int(rows[0][1])
    except ValueError as exc:
        raise FormatError(f"ewc is not an integer: {rows[0][1]!r}") from exc
    if tuple(h.strip() for h in rows[1]) != TABLE_HEADER:
        raise FormatError(f"header row must be {','.join(TABLE_HEADER)}")
    cells = []
    for lineno, row in enumerate(rows[2:], start=3):
        if len(row) != 3:
            raise FormatError(f"line {lineno}: expected 3 columns, got {len(row)}")
        try:
            count = int(row[2])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: count is not an integer: {row[2]!r}") from exc
        cells.append(ErrorCountCell(row[0].strip(), row[1].strip(), count))
    return EvaluationSample(id=DEFAULT_SAMPLE_ID, ewc=ewc, cells=tuple(cells))


def load_sample(document: str) -> EvaluationSample:
    """Load a sample from canonical JSON or from the tabular format."""
    stripped = document.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise FormatError(f"sample document is not valid JSON: {exc}") from exc
        return sample_from_doc(doc)
    return _sample_from_table(document)


def sample_to_doc(sample: EvaluationSample) -> dict:
    return {
        "id": sample.id,
        "ewc": sample.ewc,
        "cells": [
            {
                "error_type_id": cell.error_type_id,
                "severity_name": cell.severity_name,
                "count": cell.count,
            }
            for cell in sample.cells
        ],
        "metadata": dict(sample.metadata),
    }


def merge_samples(samples) -> EvaluationSample:
    """Combine shorter samples into one larger evaluation.

    Word counts and cell counts add; the first sample's metadata is kept
    and a merged_from provenance entry lists every input id.
    """
    samples = list(samples)
    if not samples:
        raise FormatError("cannot merge an empty sample list")
    counts: dict = {}
    for sample in samples:
        for cell in sample.cells:
            key = (cell.error_type_id, cell.severity_name)
            counts[key] = counts.get(key, 0) + cell.count
    metadata = dict(samples[0].metadata)
    metadata["merged_from"] = ",".join(s.id for s in samples)
    return EvaluationSample(
        id="+".join(s.id for s in samples),
        ewc=sum(s.ewc for s in samples),
        cells=tuple(
            ErrorCountCell(type_id, severity, count)
            for (type_id, severity), count in counts.items()
        ),
        metadata=metadata,
    )
