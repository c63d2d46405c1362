"""Shared fixtures: the toy corpus on disk plus small programmatic trees."""

from __future__ import annotations

from pathlib import Path

import pytest

from propsalience import load_bundle, load_manifest
from propsalience.propositions import DocumentMeta, EduSpan
from propsalience.rs3 import (
    GROUP_MULTINUC,
    GROUP_SPAN,
    SEGMENT,
    RelationInventory,
    RstNode,
    RstTree,
)

REPO_ROOT = Path(__file__).resolve().parents[1]
TOY_CORPUS = REPO_ROOT / "demos" / "data" / "toy_corpus"
TOY_ANNOTATIONS = REPO_ROOT / "demos" / "data" / "annotations"


@pytest.fixture(scope="session")
def toy_manifest():
    return load_manifest(TOY_CORPUS / "manifest.json")


@pytest.fixture(scope="session")
def story_bundle(toy_manifest):
    """Five-unit story document: root nucleus, two satellites, a coordination."""
    return load_bundle(toy_manifest.entry("story_cookies"))


@pytest.fixture(scope="session")
def news_bundle(toy_manifest):
    """Eleven-unit news document with a discontinuous (same-unit) EDU."""
    return load_bundle(toy_manifest.entry("news_document"))


def make_node(node_id, kind, parent=None, relname=None, text=""):
    return RstNode(id=node_id, kind=kind, parent=parent, relname=relname, text=text)


def make_tree(doc_id, entries, nodes) -> RstTree:
    """entries: {relname: kind}; nodes: iterable of RstNode."""
    return RstTree(
        doc_id=doc_id,
        inventory=RelationInventory(dict(entries)),
        nodes={n.id: n for n in nodes},
    )


def seg(node_id, parent=None, relname=None, text=""):
    return make_node(node_id, SEGMENT, parent=parent, relname=relname, text=text)


def span_group(node_id, parent=None, relname=None):
    return make_node(node_id, GROUP_SPAN, parent=parent, relname=relname)


def multinuc_group(node_id, parent=None, relname=None):
    return make_node(node_id, GROUP_MULTINUC, parent=parent, relname=relname)


def contiguous_meta(doc_id, token_counts, sentence_breaks=None):
    """Meta where segment i (id i+1) covers token_counts[i] consecutive tokens.

    sentence_breaks: token offsets where new sentences start (default: one
    sentence over the whole document).
    """
    total = sum(token_counts)
    tokens = tuple(f"w{i}" for i in range(total))
    spans = []
    cursor = 0
    for i, count in enumerate(token_counts):
        spans.append(EduSpan(segment_id=i + 1, token_ranges=((cursor, cursor + count),)))
        cursor += count
    if sentence_breaks is None:
        sentences = ((0, total),)
    else:
        bounds = [0] + list(sentence_breaks) + [total]
        sentences = tuple((s, e) for s, e in zip(bounds, bounds[1:]))
    return DocumentMeta(doc_id=doc_id, tokens=tokens, sentences=sentences, edu_spans=tuple(spans))


def discontinuous_tree():
    """Example-(4)-style fixture: parts 1 and 3 form one unit, 2 interrupts.

    'The boy / who laughed / fell asleep'.
    """
    tree = make_tree(
        "boy",
        {"elaboration": "rst", "same-unit": "multinuc"},
        [
            seg(1, parent=5, relname="span", text="The boy"),
            seg(2, parent=1, relname="elaboration", text="who laughed"),
            seg(3, parent=7, relname="same-unit", text="fell asleep"),
            span_group(5, parent=7, relname="same-unit"),
            multinuc_group(7),
        ],
    )
    meta = DocumentMeta(
        doc_id="boy",
        tokens=("The", "boy", "who", "laughed", "fell", "asleep"),
        sentences=((0, 6),),
        edu_spans=(
            EduSpan(1, ((0, 2),)),
            EduSpan(2, ((2, 4),)),
            EduSpan(3, ((4, 6),)),
        ),
    )
    return tree, meta
