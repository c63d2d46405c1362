"""Corpus manifest handling and document-bundle ingestion.

A manifest lists, per document, the rs3 tree, the token/sentence metadata and
the summaries file, plus a genre used for report grouping. All paths are
resolved relative to the manifest file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .annotations import AnnotationSchema, SummarySet
from .errors import DataError
from .propositions import DEFAULT_SAME_UNIT, DocumentMeta, PropositionSequence, load_document_meta, merge_same_units
from .rs3 import RstTree, parse_rs3


@dataclass(frozen=True)
class ManifestEntry:
    doc_id: str
    rs3_path: Path
    meta_path: Path
    summaries_path: Path
    genre: str = ""


@dataclass(frozen=True)
class CorpusManifest:
    documents: tuple[ManifestEntry, ...]
    schema_path: Path | None = None

    def entry(self, doc_id):
        for entry in self.documents:
            if entry.doc_id == doc_id:
                return entry
        raise KeyError(doc_id)


def load_manifest(path) -> CorpusManifest:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read manifest {path}: {exc}") from exc
    base = path.parent
    entries = []
    seen = set()
    for doc in obj.get("documents", []):
        try:
            entry = ManifestEntry(
                doc_id=doc["doc_id"],
                rs3_path=base / doc["rs3_path"],
                meta_path=base / doc["meta_path"],
                summaries_path=base / doc["summaries_path"],
                genre=doc.get("genre", ""),
            )
        except (KeyError, TypeError) as exc:
            raise DataError(f"malformed manifest entry: {exc}") from exc
        if entry.doc_id in seen:
            raise DataError(f"duplicate doc_id in manifest: {entry.doc_id}")
        seen.add(entry.doc_id)
        for p in (entry.rs3_path, entry.meta_path, entry.summaries_path):
            if not p.exists():
                raise DataError(f"{entry.doc_id}: referenced file does not exist: {p}")
        entries.append(entry)
    schema_path = None
    if obj.get("schema_path"):
        schema_path = base / obj["schema_path"]
        if not schema_path.exists():
            raise DataError(f"schema file does not exist: {schema_path}")
    return CorpusManifest(documents=tuple(entries), schema_path=schema_path)


def load_schema(manifest: CorpusManifest) -> AnnotationSchema:
    if manifest.schema_path is None:
        return AnnotationSchema()
    obj = json.loads(Path(manifest.schema_path).read_text(encoding="utf-8"))
    return AnnotationSchema.from_json_obj(obj)


def load_summaries(path, doc_id) -> SummarySet:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"{doc_id}: cannot read summaries {path}: {exc}") from exc
    if isinstance(obj, list):
        summaries = obj
    else:
        summaries = obj.get("summaries", [])
    return SummarySet(doc_id=doc_id, summaries=tuple(summaries))


@dataclass(frozen=True)
class DocumentBundle:
    doc_id: str
    genre: str
    tree: RstTree
    meta: DocumentMeta
    seq: PropositionSequence
    summaries: SummarySet

    @property
    def summary_count(self):
        return len(self.summaries)


def load_bundle(entry: ManifestEntry, same_unit: str = DEFAULT_SAME_UNIT) -> DocumentBundle:
    tree = parse_rs3(entry.rs3_path.read_bytes(), doc_id=entry.doc_id)
    meta = load_document_meta(entry.meta_path.read_bytes())
    if meta.doc_id != entry.doc_id:
        raise DataError(f"metadata doc_id {meta.doc_id!r} does not match manifest {entry.doc_id!r}")
    seq = merge_same_units(tree, meta, same_unit=same_unit)
    summaries = load_summaries(entry.summaries_path, entry.doc_id)
    return DocumentBundle(
        doc_id=entry.doc_id,
        genre=entry.genre,
        tree=tree,
        meta=meta,
        seq=seq,
        summaries=summaries,
    )


def load_corpus(manifest: CorpusManifest, same_unit: str = DEFAULT_SAME_UNIT) -> list[DocumentBundle]:
    return [load_bundle(entry, same_unit=same_unit) for entry in manifest.documents]


@dataclass(frozen=True)
class GenreCounts:
    genre: str
    docs: int = 0
    tokens: int = 0
    edus: int = 0
    alignment_slots: int = 0  # EDUs x summaries


@dataclass(frozen=True)
class CorpusSummary:
    genres: tuple[GenreCounts, ...] = ()
    total: GenreCounts = field(default_factory=lambda: GenreCounts(genre="Total"))


def summarize_corpus(bundles) -> CorpusSummary:
    """Per-genre document/token/EDU/alignment-slot counts plus a total row."""
    per_genre: dict[str, list[int]] = {}
    for bundle in bundles:
        counts = per_genre.setdefault(bundle.genre, [0, 0, 0, 0])
        counts[0] += 1
        counts[1] += bundle.meta.token_count
        counts[2] += len(bundle.tree.segments)
        counts[3] += len(bundle.tree.segments) * bundle.summary_count
    genres = tuple(
        GenreCounts(genre=g, docs=c[0], tokens=c[1], edus=c[2], alignment_slots=c[3])
        for g, c in sorted(per_genre.items())
    )
    total = GenreCounts(
        genre="Total",
        docs=sum(g.docs for g in genres),
        tokens=sum(g.tokens for g in genres),
        edus=sum(g.edus for g in genres),
        alignment_slots=sum(g.alignment_slots for g in genres),
    )
    return CorpusSummary(genres=genres, total=total)
