"""Manifest loading and corpus summaries."""

import json

import pytest

from propsalience import DataError, load_corpus, load_manifest, summarize_corpus
from propsalience.corpus import load_schema, load_summaries

from conftest import TOY_CORPUS


def test_load_toy_corpus(toy_manifest):
    bundles = load_corpus(toy_manifest)
    assert [b.doc_id for b in bundles] == ["story_cookies", "news_document"]
    assert all(b.summary_count == 5 for b in bundles)


def test_summary_counts(toy_manifest):
    summary = summarize_corpus(load_corpus(toy_manifest))
    by_genre = {g.genre: g for g in summary.genres}
    assert by_genre["fiction"].docs == 1
    assert by_genre["fiction"].tokens == 14
    assert by_genre["fiction"].edus == 5
    assert by_genre["fiction"].alignment_slots == 25
    assert by_genre["news"].edus == 11
    assert by_genre["news"].alignment_slots == 55
    assert summary.total.docs == 2
    assert summary.total.tokens == 70
    assert summary.total.edus == 16
    assert summary.total.alignment_slots == 80


def test_empty_manifest(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"documents": []}))
    summary = summarize_corpus(load_corpus(load_manifest(path)))
    assert summary.total.docs == 0
    assert summary.total.alignment_slots == 0
    assert summary.genres == ()


def test_missing_file_rejected(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(
        json.dumps(
            {
                "documents": [
                    {
                        "doc_id": "x",
                        "rs3_path": "nope.rs3",
                        "meta_path": "nope.json",
                        "summaries_path": "nope2.json",
                    }
                ]
            }
        )
    )
    with pytest.raises(DataError, match="does not exist"):
        load_manifest(path)


def test_duplicate_doc_ids_rejected(tmp_path):
    entry = {
        "doc_id": "story_cookies",
        "rs3_path": str(TOY_CORPUS / "story_cookies.rs3"),
        "meta_path": str(TOY_CORPUS / "story_cookies.meta.json"),
        "summaries_path": str(TOY_CORPUS / "story_cookies.summaries.json"),
    }
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"documents": [entry, entry]}))
    with pytest.raises(DataError, match="duplicate"):
        load_manifest(path)


def test_schema_loaded(toy_manifest):
    schema = load_schema(toy_manifest)
    keys = [f.key for f in schema.fields]
    assert keys == ["uncertain", "trigger_note"]
    assert schema.fields[1].applies_when == "approximate"


def test_summaries_list_form(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(["one summary", "another"]))
    summaries = load_summaries(path, "d")
    assert len(summaries) == 2


def test_summaries_must_be_nonempty(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"summaries": ["ok", ""]}))
    with pytest.raises(Exception):
        load_summaries(path, "d")
