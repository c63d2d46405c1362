"""Tiled proposition markables built from discourse trees and token metadata.

Every document token belongs to exactly one proposition. Propositions are
EDUs, except that discontinuous EDUs (parts joined by a same-unit multinuc
relation) are merged into a single unit with multiple token ranges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import MetaError, StructuralError, TreeMetaMismatchError
from .rs3 import GROUP_MULTINUC, GROUP_SPAN, ROOT_LABEL, SPAN, RstTree

DEFAULT_SAME_UNIT = "same-unit"


@dataclass(frozen=True)
class EduSpan:
    segment_id: int
    token_ranges: tuple[tuple[int, int], ...]  # half-open [start, end)


@dataclass(frozen=True)
class DocumentMeta:
    doc_id: str
    tokens: tuple[str, ...]
    sentences: tuple[tuple[int, int], ...]
    edu_spans: tuple[EduSpan, ...]

    @property
    def token_count(self):
        return len(self.tokens)

    def span_for(self, segment_id):
        for span in self.edu_spans:
            if span.segment_id == segment_id:
                return span
        return None


@dataclass(frozen=True)
class Proposition:
    index: int
    segment_ids: tuple[int, ...]
    token_ranges: tuple[tuple[int, int], ...]
    text: str

    @property
    def first_segment(self):
        return self.segment_ids[0]

    @property
    def start(self):
        return self.token_ranges[0][0]

    @property
    def length(self):
        return sum(end - start for start, end in self.token_ranges)


@dataclass(frozen=True)
class PropositionSequence:
    doc_id: str
    propositions: tuple[Proposition, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.propositions)

    def __iter__(self):
        return iter(self.propositions)

    def __getitem__(self, index):
        return self.propositions[index]

    def by_segment(self, segment_id):
        """The proposition containing a given segment id."""
        for prop in self.propositions:
            if segment_id in prop.segment_ids:
                return prop
        raise KeyError(segment_id)


def _check_partition(ranges, token_count, what, doc_id):
    """Ranges must tile [0, token_count) exactly once, in any order."""
    covered = sorted(ranges)
    cursor = 0
    for start, end in covered:
        if start != cursor or end <= start:
            raise MetaError(
                f"{doc_id}: {what} ranges do not tile the document "
                f"(expected next range to start at {cursor}, got [{start},{end}))"
            )
        cursor = end
    if cursor != token_count:
        raise MetaError(
            f"{doc_id}: {what} ranges cover [0,{cursor}) but the document has {token_count} tokens"
        )


def document_meta_from_json(obj) -> DocumentMeta:
    """Build a validated DocumentMeta from its JSON object form."""
    try:
        doc_id = obj["doc_id"]
        tokens = tuple(obj["tokens"])
        sentences = tuple((int(s), int(e)) for s, e in obj["sentences"])
        edu_spans = tuple(
            EduSpan(
                segment_id=int(edu["segment_id"]),
                token_ranges=tuple(sorted((int(s), int(e)) for s, e in edu["token_ranges"])),
            )
            for edu in obj["edus"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MetaError(f"malformed document metadata: {exc}") from exc

    seen = set()
    for span in edu_spans:
        if span.segment_id in seen:
            raise MetaError(f"{doc_id}: segment {span.segment_id} listed twice in metadata")
        seen.add(span.segment_id)

    _check_partition(sentences, len(tokens), "sentence", doc_id)
    _check_partition(
        [r for span in edu_spans for r in span.token_ranges], len(tokens), "EDU", doc_id
    )
    return DocumentMeta(doc_id=doc_id, tokens=tokens, sentences=sentences, edu_spans=edu_spans)


def load_document_meta(data: bytes) -> DocumentMeta:
    return document_meta_from_json(json.loads(data))


def head_segment(tree: RstTree, node_id: int) -> int:
    """Descend from a constituent to the segment heading it.

    Span groups are headed by their 'span' child, multinuc groups by their
    lowest-id coordinate child.
    """
    node = tree.node(node_id)
    seen = set()
    while not node.is_segment:
        if node.id in seen:
            raise StructuralError(f"{tree.doc_id}: head descent cycles at node {node.id}")
        seen.add(node.id)
        kids = tree.children_of(node.id)
        if node.kind == GROUP_SPAN:
            heads = [k for k in kids if k.relname == SPAN]
        else:  # GROUP_MULTINUC
            heads = [k for k in kids if k.relname is not None and tree.inventory.is_multinuc(k.relname)]
        if not heads:
            raise StructuralError(f"{tree.doc_id}: group {node.id} has no head child")
        node = min(heads, key=lambda k: k.id)
    return node.id


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def merge_same_units(
    tree: RstTree,
    meta: DocumentMeta,
    same_unit: str = DEFAULT_SAME_UNIT,
) -> PropositionSequence:
    """Merge discontinuous EDUs into single propositions and tile the document.

    Segments joined under a multinuc group by the same-unit relation (matched
    case-insensitively) become one proposition; every other segment becomes a
    singleton. Output is ordered by first token position.
    """
    segment_ids = [n.id for n in tree.segments]
    for sid in segment_ids:
        if meta.span_for(sid) is None:
            raise TreeMetaMismatchError(
                f"{tree.doc_id}: segment {sid} has no token spans in the metadata"
            )
    known = set(segment_ids)
    for span in meta.edu_spans:
        if span.segment_id not in known:
            raise TreeMetaMismatchError(
                f"{tree.doc_id}: metadata lists segment {span.segment_id} missing from the tree"
            )

    uf = _UnionFind()
    for sid in segment_ids:
        uf.find(sid)
    for group in tree.groups:
        if group.kind != GROUP_MULTINUC:
            continue
        parts = [
            k
            for k in tree.children_of(group.id)
            if k.relname is not None
            and k.relname.lower() == same_unit.lower()
            and tree.inventory.is_multinuc(k.relname)
        ]
        if not parts:
            continue
        if len(parts) < 2:
            raise StructuralError(
                f"{tree.doc_id}: same-unit group {group.id} has only {len(parts)} part"
            )
        heads = [head_segment(tree, part.id) for part in parts]
        for other in heads[1:]:
            uf.union(heads[0], other)

    components: dict[int, list[int]] = {}
    for sid in segment_ids:
        components.setdefault(uf.find(sid), []).append(sid)

    node_text = {n.id: n.text for n in tree.segments}
    props = []
    for members in components.values():
        members = sorted(members)
        ranges = sorted(r for sid in members for r in meta.span_for(sid).token_ranges)
        for (s1, e1), (s2, e2) in zip(ranges, ranges[1:]):
            if s2 < e1:
                raise MetaError(
                    f"{tree.doc_id}: overlapping token ranges within proposition {members}"
                )
        text = " ".join(node_text[sid].strip() for sid in members).strip()
        props.append((ranges[0][0], tuple(members), tuple(ranges), text))

    props.sort(key=lambda item: item[0])
    propositions = tuple(
        Proposition(index=i, segment_ids=segs, token_ranges=ranges, text=text)
        for i, (_, segs, ranges, text) in enumerate(props)
    )

    _check_partition(
        [r for p in propositions for r in p.token_ranges],
        meta.token_count,
        "proposition",
        tree.doc_id,
    )
    return PropositionSequence(doc_id=tree.doc_id, propositions=propositions)


def attachment_relation(
    tree: RstTree, proposition: Proposition, strip_orientation_suffix: bool = False
) -> str:
    """Discourse relation by which a proposition attaches to the rest of the tree.

    Follows the span chain upward from the proposition's first segment and
    returns the first non-span relation name; a unit heading the root
    constituent gets the reserved label ROOT. Labels are kept verbatim unless
    strip_orientation_suffix is set, which coarsens "attribution-positive"
    style labels to their first hyphen component (same-unit stays intact).
    """
    node = tree.node(proposition.first_segment)
    while node.relname == SPAN:
        if node.parent is None:
            break
        node = tree.node(node.parent)
    if node.parent is None and node.relname in (None, SPAN):
        return ROOT_LABEL
    relname = node.relname
    if strip_orientation_suffix and "-" in relname and relname.lower() != DEFAULT_SAME_UNIT:
        relname = relname.split("-", 1)[0]
    return relname
