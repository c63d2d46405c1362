"""Per-summary proposition alignments, their file format, and salience scores.

An alignment marks one proposition as mentioned by one summary, either as a
direct match or as an approximate alignment (a trigger, or a component of an
aggregated summary statement). Propositions carrying the same summary
information can be linked into duplicate groups. A proposition's salience
score is the number of summaries with any alignment to it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import AnnotationFormatError, PropositionReferenceError
from .propositions import PropositionSequence

MODE_MATCH = "match"
MODE_APPROXIMATE = "approximate"
KIND_TRIGGER = "trigger"
KIND_COMPONENT = "component"

SCHEMA_VERSION = "1"
RESERVED_FIELD_KEYS = ("mode", "approx_kind", "duplicate_group", "note")


@dataclass(frozen=True)
class Alignment:
    summary_index: int
    prop_index: int
    mode: str = MODE_MATCH
    approx_kind: str | None = None
    duplicate_group: str | None = None
    note: str | None = None
    extra: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.mode not in (MODE_MATCH, MODE_APPROXIMATE):
            raise AnnotationFormatError(f"unknown alignment mode {self.mode!r}")
        if self.mode == MODE_APPROXIMATE:
            if self.approx_kind not in (KIND_TRIGGER, KIND_COMPONENT):
                raise AnnotationFormatError(
                    f"approximate alignment needs approx_kind trigger or component, "
                    f"got {self.approx_kind!r}"
                )
        elif self.approx_kind is not None:
            raise AnnotationFormatError(
                f"approx_kind {self.approx_kind!r} is only allowed with mode 'approximate'"
            )
        if self.summary_index < 0 or self.prop_index < 0:
            raise AnnotationFormatError("summary and proposition indices must be non-negative")

    @property
    def is_component(self):
        return self.approx_kind == KIND_COMPONENT

    def extra_dict(self):
        return dict(self.extra)


@dataclass(frozen=True)
class SummarySet:
    doc_id: str
    summaries: tuple[str, ...]

    def __post_init__(self):
        if len(self.summaries) < 1:
            raise AnnotationFormatError(f"{self.doc_id}: a document needs at least one summary")
        if any(not s for s in self.summaries):
            raise AnnotationFormatError(f"{self.doc_id}: summary texts must be non-empty")

    def __len__(self):
        return len(self.summaries)


@dataclass(frozen=True)
class AnnotationSet:
    doc_id: str
    annotator: str
    schema_version: str = SCHEMA_VERSION
    alignments: dict[tuple[int, int], Alignment] = field(default_factory=dict)

    @classmethod
    def from_alignments(cls, doc_id, annotator, alignments, schema_version=SCHEMA_VERSION):
        """Build a set from an iterable of alignments; later duplicates replace
        earlier ones (set semantics per (summary, proposition))."""
        keyed = {}
        for alignment in alignments:
            keyed[(alignment.summary_index, alignment.prop_index)] = alignment
        return cls(doc_id=doc_id, annotator=annotator, schema_version=schema_version, alignments=keyed)

    def get(self, summary_index, prop_index):
        return self.alignments.get((summary_index, prop_index))

    def has(self, summary_index, prop_index):
        return (summary_index, prop_index) in self.alignments

    def sorted_alignments(self):
        return [self.alignments[key] for key in sorted(self.alignments)]

    def for_summary(self, summary_index):
        return [a for a in self.sorted_alignments() if a.summary_index == summary_index]

    def aligned_props(self, summary_index):
        return {a.prop_index for a in self.alignments.values() if a.summary_index == summary_index}

    def __len__(self):
        return len(self.alignments)


@dataclass(frozen=True)
class SchemaField:
    key: str
    label: str
    kind: str  # "checkbox" | "textbox"
    applies_when: str | None = None  # restrict to one alignment mode

    def __post_init__(self):
        if self.kind not in ("checkbox", "textbox"):
            raise AnnotationFormatError(f"schema field {self.key!r} has unknown kind {self.kind!r}")
        if self.key in RESERVED_FIELD_KEYS:
            raise AnnotationFormatError(f"schema field key {self.key!r} is reserved")
        if self.applies_when not in (None, MODE_MATCH, MODE_APPROXIMATE):
            raise AnnotationFormatError(
                f"schema field {self.key!r}: applies_when must be an alignment mode"
            )


@dataclass(frozen=True)
class AnnotationSchema:
    fields: tuple[SchemaField, ...] = ()

    def __post_init__(self):
        keys = [f.key for f in self.fields]
        if len(keys) != len(set(keys)):
            raise AnnotationFormatError("schema field keys must be unique")

    def to_json_obj(self):
        return {
            "version": SCHEMA_VERSION,
            "fields": [
                {
                    "key": f.key,
                    "label": f.label,
                    "kind": f.kind,
                    **({"applies_when": f.applies_when} if f.applies_when else {}),
                }
                for f in self.fields
            ],
        }

    @classmethod
    def from_json_obj(cls, obj):
        try:
            fields = tuple(
                SchemaField(
                    key=f["key"],
                    label=f.get("label", f["key"]),
                    kind=f["kind"],
                    applies_when=f.get("applies_when"),
                )
                for f in obj.get("fields", [])
            )
        except (KeyError, TypeError) as exc:
            raise AnnotationFormatError(f"malformed annotation schema: {exc}") from exc
        return cls(fields=fields)


def _alignment_to_obj(alignment: Alignment):
    obj = {
        "summary": alignment.summary_index,
        "prop": alignment.prop_index,
        "mode": alignment.mode,
    }
    if alignment.approx_kind is not None:
        obj["approx_kind"] = alignment.approx_kind
    if alignment.duplicate_group is not None:
        obj["duplicate_group"] = alignment.duplicate_group
    if alignment.note is not None:
        obj["note"] = alignment.note
    if alignment.extra:
        obj["extra"] = {k: v for k, v in alignment.extra}
    return obj


def _alignment_from_obj(obj) -> Alignment:
    try:
        extra = obj.get("extra", {})
        if not isinstance(extra, dict):
            raise AnnotationFormatError("alignment 'extra' must be an object")
        return Alignment(
            summary_index=int(obj["summary"]),
            prop_index=int(obj["prop"]),
            mode=obj.get("mode", MODE_MATCH),
            approx_kind=obj.get("approx_kind"),
            duplicate_group=obj.get("duplicate_group"),
            note=obj.get("note"),
            extra=tuple(sorted(extra.items())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise AnnotationFormatError(f"malformed alignment entry: {exc}") from exc


def annotation_set_to_obj(aset: AnnotationSet):
    """Canonical JSON object form: alignments sorted by (summary, prop)."""
    return {
        "doc_id": aset.doc_id,
        "annotator": aset.annotator,
        "schema_version": aset.schema_version,
        "alignments": [_alignment_to_obj(a) for a in aset.sorted_alignments()],
    }


def annotation_set_from_obj(obj, seq: PropositionSequence | None = None) -> AnnotationSet:
    try:
        doc_id = obj["doc_id"]
        annotator = obj["annotator"]
        schema_version = str(obj.get("schema_version", SCHEMA_VERSION))
        entries = obj["alignments"]
    except (KeyError, TypeError) as exc:
        raise AnnotationFormatError(f"malformed annotation set: {exc}") from exc

    keyed = {}
    for entry in entries:
        alignment = _alignment_from_obj(entry)
        key = (alignment.summary_index, alignment.prop_index)
        if key in keyed:
            raise AnnotationFormatError(
                f"{doc_id}: duplicate alignment entry for summary {key[0]}, proposition {key[1]}"
            )
        keyed[key] = alignment
    aset = AnnotationSet(
        doc_id=doc_id, annotator=annotator, schema_version=schema_version, alignments=keyed
    )
    if seq is not None:
        for alignment in keyed.values():
            if alignment.prop_index >= len(seq):
                raise PropositionReferenceError(
                    f"{doc_id}: alignment refers to proposition {alignment.prop_index}, "
                    f"but the document has {len(seq)} propositions"
                )
    return aset


def save_annotations(aset: AnnotationSet) -> bytes:
    """Canonical serialization: fixed key order, two-space indent, UTF-8."""
    text = json.dumps(annotation_set_to_obj(aset), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def load_annotations(data: bytes, seq: PropositionSequence | None = None) -> AnnotationSet:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise AnnotationFormatError(f"annotation file is not valid JSON: {exc}") from exc
    return annotation_set_from_obj(obj, seq=seq)


def annotation_diagnostics(aset: AnnotationSet) -> list[str]:
    """Soft warnings: dangling duplicate groups and duplicate-flagged components."""
    warnings = []
    group_sizes: dict[tuple[int, str], int] = {}
    for alignment in aset.alignments.values():
        if alignment.duplicate_group is not None:
            key = (alignment.summary_index, alignment.duplicate_group)
            group_sizes[key] = group_sizes.get(key, 0) + 1
    for alignment in aset.sorted_alignments():
        if alignment.duplicate_group is not None:
            key = (alignment.summary_index, alignment.duplicate_group)
            if group_sizes[key] < 2:
                warnings.append(
                    f"summary {alignment.summary_index}: duplicate group "
                    f"{alignment.duplicate_group!r} has a single member (proposition "
                    f"{alignment.prop_index})"
                )
            if alignment.is_component:
                warnings.append(
                    f"summary {alignment.summary_index}: proposition {alignment.prop_index} "
                    f"is flagged both component and duplicate"
                )
    return warnings


@dataclass(frozen=True)
class SalienceScores:
    doc_id: str
    score: dict[int, int]  # proposition index -> number of mentioning summaries

    def values(self):
        return [self.score[i] for i in sorted(self.score)]


def salience_scores(aset: AnnotationSet, summary_count: int, n_props: int | None = None) -> SalienceScores:
    """Count, per proposition, the summaries with any alignment to it.

    Matches and approximate alignments (including components) all count;
    duplicate flags do not change counts. When n_props is given, propositions
    without alignments are included with score 0.
    """
    for summary_index, _ in aset.alignments:
        if summary_index >= summary_count:
            raise AnnotationFormatError(
                f"{aset.doc_id}: alignment to summary {summary_index}, "
                f"but the document has {summary_count} summaries"
            )
    mentions: dict[int, set[int]] = {}
    for summary_index, prop_index in aset.alignments:
        mentions.setdefault(prop_index, set()).add(summary_index)
    if n_props is None:
        n_props = max(mentions, default=-1) + 1
    score = {i: len(mentions.get(i, ())) for i in range(n_props)}
    for prop_index in mentions:
        if prop_index >= n_props:
            raise PropositionReferenceError(
                f"{aset.doc_id}: alignment to proposition {prop_index} outside the document"
            )
    return SalienceScores(doc_id=aset.doc_id, score=score)


def duplicate_partition(
    a: AnnotationSet, b: AnnotationSet, summary_index: int, n_props: int
) -> list[frozenset[int]]:
    """Partition propositions into duplicate classes for one summary.

    Co-membership links from both annotators' duplicate groups are pooled and
    closed transitively; unlinked propositions stay singletons.
    """
    parent = list(range(n_props))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for aset in (a, b):
        groups: dict[str, list[int]] = {}
        for alignment in aset.alignments.values():
            if alignment.summary_index != summary_index or alignment.duplicate_group is None:
                continue
            groups.setdefault(alignment.duplicate_group, []).append(alignment.prop_index)
        for members in groups.values():
            members = [m for m in members if m < n_props]
            for other in members[1:]:
                union(members[0], other)

    classes: dict[int, set[int]] = {}
    for prop_index in range(n_props):
        classes.setdefault(find(prop_index), set()).add(prop_index)
    return sorted((frozenset(c) for c in classes.values()), key=min)
