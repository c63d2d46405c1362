"""HTTP API: document payloads, schema, optimistic-concurrency writes."""

import json
import threading

import httpx
import pytest

from propsalience import AnnotationStore, load_corpus
from propsalience.corpus import load_schema
from propsalience.server import AnnotationService, start_background


@pytest.fixture()
def service(toy_manifest, tmp_path):
    bundles = load_corpus(toy_manifest)
    store = AnnotationStore(tmp_path / "data")
    static_dir = tmp_path / "static"
    static_dir.mkdir()
    (static_dir / "index.html").write_text("<!doctype html><title>annotator</title>")
    svc = AnnotationService(bundles, store, schema=load_schema(toy_manifest), static_dir=static_dir)
    server, base_url = start_background(svc)
    yield base_url
    server.shutdown()
    server.server_close()


def _annotation(doc_id, annotator, alignments):
    return {
        "doc_id": doc_id,
        "annotator": annotator,
        "schema_version": "1",
        "alignments": alignments,
    }


def test_document_listing(service):
    r = httpx.get(f"{service}/api/documents")
    assert r.status_code == 200
    docs = {d["doc_id"]: d for d in r.json()["documents"]}
    assert docs["news_document"]["n_propositions"] == 10
    assert docs["news_document"]["n_summaries"] == 5


def test_document_payload(service):
    r = httpx.get(f"{service}/api/documents/news_document")
    payload = r.json()
    assert len(payload["summaries"]) == 5
    assert len(payload["propositions"]) == 10
    merged = payload["propositions"][5]
    assert merged["token_ranges"] == [[31, 34], [39, 45]]
    assert payload["tokens"][0] == "Sensitive"
    assert payload["sentences"][0] == [0, 6]


def test_unknown_document_404(service):
    assert httpx.get(f"{service}/api/documents/nope").status_code == 404
    assert httpx.get(f"{service}/api/annotations/nope/alice").status_code == 404


def test_schema_endpoint(service):
    r = httpx.get(f"{service}/api/schema")
    keys = [f["key"] for f in r.json()["fields"]]
    assert keys == ["uncertain", "trigger_note"]


def test_fresh_annotation_is_version_zero(service):
    r = httpx.get(f"{service}/api/annotations/news_document/alice")
    body = r.json()
    assert body["version"] == 0
    assert body["annotation"]["alignments"] == []


def test_put_then_get_round_trip(service):
    alignments = [
        {"summary": 0, "prop": 2, "mode": "match"},
        {"summary": 1, "prop": 5, "mode": "approximate", "approx_kind": "component"},
    ]
    put = httpx.put(
        f"{service}/api/annotations/news_document/alice",
        json={"version": 0, "annotation": _annotation("news_document", "alice", alignments)},
    )
    assert put.status_code == 200
    assert put.json()["version"] == 1
    got = httpx.get(f"{service}/api/annotations/news_document/alice").json()
    assert got["version"] == 1
    assert [(a["summary"], a["prop"]) for a in got["annotation"]["alignments"]] == [(0, 2), (1, 5)]


def test_stale_put_conflicts_and_preserves_store(service):
    base = _annotation("news_document", "alice", [{"summary": 0, "prop": 1, "mode": "match"}])
    assert httpx.put(
        f"{service}/api/annotations/news_document/alice",
        json={"version": 0, "annotation": base},
    ).status_code == 200
    stale = httpx.put(
        f"{service}/api/annotations/news_document/alice",
        json={"version": 0, "annotation": _annotation("news_document", "alice", [])},
    )
    assert stale.status_code == 409
    assert stale.json()["current_version"] == 1
    got = httpx.get(f"{service}/api/annotations/news_document/alice").json()
    assert got["version"] == 1
    assert len(got["annotation"]["alignments"]) == 1


def test_sequential_writers_version_two(service):
    url = f"{service}/api/annotations/story_cookies/alice"
    a1 = _annotation("story_cookies", "alice", [{"summary": 0, "prop": 0, "mode": "match"}])
    r1 = httpx.put(url, json={"version": 0, "annotation": a1})
    current = r1.json()["version"]
    a2 = _annotation("story_cookies", "alice", [{"summary": 1, "prop": 1, "mode": "match"}])
    r2 = httpx.put(url, json={"version": current, "annotation": a2})
    assert r2.json()["version"] == 2


def test_invalid_prop_index_rejected(service):
    bad = _annotation("news_document", "alice", [{"summary": 0, "prop": 99, "mode": "match"}])
    r = httpx.put(
        f"{service}/api/annotations/news_document/alice",
        json={"version": 0, "annotation": bad},
    )
    assert r.status_code == 400
    assert "99" in r.json()["error"]


def test_invalid_mode_combination_rejected(service):
    bad = _annotation(
        "news_document", "alice",
        [{"summary": 0, "prop": 1, "mode": "match", "approx_kind": "component"}],
    )
    r = httpx.put(
        f"{service}/api/annotations/news_document/alice",
        json={"version": 0, "annotation": bad},
    )
    assert r.status_code == 400


def test_concurrent_writers_all_versions_accounted(service):
    url = f"{service}/api/annotations/news_document/race"
    results = []

    def writer(summary):
        body = _annotation("news_document", "race", [{"summary": summary, "prop": 0, "mode": "match"}])
        r = httpx.put(url, json={"version": 0, "annotation": body})
        results.append(r.status_code)

    threads = [threading.Thread(target=writer, args=(s,)) for s in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    # exactly one writer wins version 0; the rest get conflicts
    assert sorted(results).count(200) == 1
    assert sorted(results).count(409) == 3
    assert httpx.get(url).json()["version"] == 1


def test_static_serving(service):
    r = httpx.get(f"{service}/")
    assert r.status_code == 200
    assert "annotator" in r.text
    assert httpx.get(f"{service}/ui/index.html").status_code == 200
    assert httpx.get(f"{service}/ui/../../etc/passwd").status_code in (400, 404)


def test_reads_do_not_bump_version(service):
    url = f"{service}/api/annotations/news_document/alice"
    body = _annotation("news_document", "alice", [{"summary": 0, "prop": 1, "mode": "match"}])
    httpx.put(url, json={"version": 0, "annotation": body})
    for _ in range(3):
        assert httpx.get(url).json()["version"] == 1
