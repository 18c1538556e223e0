"""Append-only, file-backed store for metrics, samples, curves, reports,
and calibration sessions.

One JSONL file per kind; every put appends a full record and the last
record for an id wins, so the files double as an audit log of every
revision. An in-memory index is rebuilt by replaying the log on startup.
Writes are serialized through a lock and fsynced before acknowledging;
readers only touch immutable snapshots taken from the index.
"""

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import FormatError, NotFoundError

KINDS = ("METRIC", "SAMPLE", "CURVE", "REPORT", "SESSION")


@dataclass(frozen=True)
class StoredEntity:
    kind: str
    id: str
    created_at: str
    body: dict


class EntityStore:
    def __init__(self, root):
        self._root = Path(root)
        self._root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._index: dict = {}
        for kind in KINDS:
            self._replay(kind)

    def _path(self, kind: str) -> Path:
        return self._root / f"{kind.lower()}.jsonl"

    def _replay(self, kind: str) -> None:
        path = self._path(kind)
        if not path.exists():
            return
        with path.open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                key = (record["kind"], record["id"])
                if record.get("deleted"):
                    self._index.pop(key, None)
                else:
                    self._index[key] = StoredEntity(
                        kind=record["kind"],
                        id=record["id"],
                        created_at=record["created_at"],
                        body=record["body"],
                    )

    @staticmethod
    def _check_kind(kind: str) -> None:
        if kind not in KINDS:
            raise FormatError(f"unknown kind {kind!r} (known: {', '.join(KINDS)})")

    def _append(self, kind: str, record: dict) -> None:
        line = json.dumps(record, ensure_ascii=False)
        with self._path(kind).open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    def put(self, kind: str, entity_id: str, body: dict) -> str:
        """Store a new revision; an existing id is superseded, not rejected."""
        self._check_kind(kind)
        if not isinstance(body, dict):
            raise FormatError("body must be a document object")
        if not entity_id:
            raise FormatError("id must be non-empty")
        try:
            json.dumps(body)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"body is not serializable: {exc}") from exc
        created_at = datetime.now(timezone.utc).isoformat()
        with self._lock:
            self._append(
                kind,
                {"kind": kind, "id": entity_id, "created_at": created_at, "body": body},
            )
            self._index[(kind, entity_id)] = StoredEntity(
                kind=kind, id=entity_id, created_at=created_at, body=body
            )
        return entity_id

    def get(self, kind: str, entity_id: str) -> StoredEntity:
        self._check_kind(kind)
        entity = self._index.get((kind, entity_id))
        if entity is None:
            raise NotFoundError(f"no {kind} with id {entity_id!r}")
        return entity

    def list(self, kind: str, where: "dict | None" = None) -> list:
        """Latest revision of every entity of a kind, sorted by id.

        `where` filters on equality against the body's metadata mapping
        (samples and the like); entities without metadata never match.
        """
        self._check_kind(kind)
        entities = sorted(
            (entity for (k, _), entity in self._index.items() if k == kind),
            key=lambda entity: entity.id,
        )
        if not where:
            return entities
        matched = []
        for entity in entities:
            metadata = entity.body.get("metadata")
            if isinstance(metadata, dict) and all(
                metadata.get(key) == value for key, value in where.items()
            ):
                matched.append(entity)
        return matched

    def delete(self, kind: str, entity_id: str) -> bool:
        self._check_kind(kind)
        with self._lock:
            if (kind, entity_id) not in self._index:
                raise NotFoundError(f"no {kind} with id {entity_id!r}")
            self._append(
                kind,
                {
                    "kind": kind,
                    "id": entity_id,
                    "created_at": datetime.now(timezone.utc).isoformat(),
                    "body": None,
                    "deleted": True,
                },
            )
            del self._index[(kind, entity_id)]
        return True
