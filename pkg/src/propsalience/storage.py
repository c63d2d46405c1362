"""Versioned on-disk store for annotation sets.

One canonical JSON file per (document, annotator) under a data directory.
Writes are atomic (temp file + rename in the same directory) and guarded by
optimistic concurrency: a write must quote the version it is replacing.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .annotations import AnnotationSet, annotation_set_from_obj, annotation_set_to_obj
from .errors import AnnotationFormatError, DataError, VersionConflictError

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


@dataclass(frozen=True)
class StoredAnnotation:
    annotation: AnnotationSet
    version: int
    updated_at: str


def _check_name(name, what):
    if not _NAME_RE.match(name):
        raise DataError(f"unsafe {what} for storage: {name!r}")


class AnnotationStore:
    """File-backed store; all writes to one (doc, annotator) file are serialized."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[Path, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def path_for(self, doc_id, annotator) -> Path:
        _check_name(doc_id, "doc_id")
        _check_name(annotator, "annotator")
        return self.data_dir / doc_id / f"{annotator}.json"

    def _lock_for(self, path) -> threading.Lock:
        with self._locks_guard:
            if path not in self._locks:
                self._locks[path] = threading.Lock()
            return self._locks[path]

    def load(self, doc_id, annotator, seq=None) -> StoredAnnotation | None:
        path = self.path_for(doc_id, annotator)
        if not path.exists():
            return None
        try:
            obj = json.loads(path.read_text(encoding="utf-8"))
            annotation = annotation_set_from_obj(obj["annotation"], seq=seq)
            return StoredAnnotation(
                annotation=annotation,
                version=int(obj["version"]),
                updated_at=str(obj.get("updated_at", "")),
            )
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise AnnotationFormatError(f"corrupt annotation store file {path}: {exc}") from exc

    def current_version(self, doc_id, annotator) -> int:
        stored = self.load(doc_id, annotator)
        return 0 if stored is None else stored.version

    def save(self, doc_id, annotator, aset: AnnotationSet, expected_version: int) -> StoredAnnotation:
        """Accepts the write only if expected_version matches the stored version
        (0 for a fresh file); the accepted write gets version + 1."""
        path = self.path_for(doc_id, annotator)
        with self._lock_for(path):
            current = self.current_version(doc_id, annotator)
            if expected_version != current:
                raise VersionConflictError(expected=expected_version, current=current)
            stored = StoredAnnotation(
                annotation=aset,
                version=current + 1,
                updated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            )
            payload = {
                "version": stored.version,
                "updated_at": stored.updated_at,
                "annotation": annotation_set_to_obj(aset),
            }
            data = (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
            _atomic_write(path, data)
            return stored

    def annotators_for(self, doc_id) -> list[str]:
        _check_name(doc_id, "doc_id")
        doc_dir = self.data_dir / doc_id
        if not doc_dir.is_dir():
            return []
        return sorted(p.stem for p in doc_dir.glob("*.json"))


def _atomic_write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=".tmp-", dir=path.parent)
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    dir_fd = os.open(path.parent, os.O_RDONLY)
    try:
        os.fsync(dir_fd)
    finally:
        os.close(dir_fd)
