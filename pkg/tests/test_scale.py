"""Pilot-scale smoke test: a synthetic 32-document corpus through the CLI.

Mirrors the real corpus dimensions (32 docs, 16 genres, ~3.8K EDUs, ~30K
tokens, 5 summaries each) so ingest/agree/analyze run the same code paths and
design-matrix shapes they would on the actual data.
"""

import json
import random

import pytest

from propsalience.cli import main

GENRES = [
    "academic", "biography", "conversation", "court", "essay", "fiction",
    "how-to", "interview", "letter", "news", "podcast", "reddit", "speech",
    "textbook", "travel", "vlog",
]
RST_RELATIONS = [
    "elaboration", "cause", "concession", "background", "purpose",
    "condition", "evaluation", "attribution", "result", "contrast",
]


def _write_doc(rng, corpus_dir, doc_id, n_segments):
    relations = "".join(f'<rel name="{r}" type="rst"/>' for r in RST_RELATIONS)
    relations += '<rel name="joint" type="multinuc"/><rel name="same-unit" type="multinuc"/>'
    seg_xml = ['<segment id="1">seg 1</segment>']
    for i in range(2, n_segments + 1):
        parent = rng.randint(1, i - 1)
        relname = rng.choice(RST_RELATIONS)
        seg_xml.append(f'<segment id="{i}" parent="{parent}" relname="{relname}">seg {i}</segment>')
    (corpus_dir / f"{doc_id}.rs3").write_text(
        f'<rst><header><relations>{relations}</relations></header>'
        f'<body>{"".join(seg_xml)}</body></rst>'
    )

    tokens = []
    edus = []
    sentence_bounds = [0]
    cursor = 0
    for i in range(1, n_segments + 1):
        width = rng.randint(4, 12)
        tokens.extend(f"w{cursor + k}" for k in range(width))
        edus.append({"segment_id": i, "token_ranges": [[cursor, cursor + width]]})
        cursor += width
        if rng.random() < 0.4 or i == n_segments:
            sentence_bounds.append(cursor)
    sentences = [[s, e] for s, e in zip(sentence_bounds, sentence_bounds[1:])]
    (corpus_dir / f"{doc_id}.meta.json").write_text(
        json.dumps({"doc_id": doc_id, "tokens": tokens, "sentences": sentences, "edus": edus})
    )
    (corpus_dir / f"{doc_id}.summaries.json").write_text(
        json.dumps({"doc_id": doc_id, "summaries": [f"summary {k} of {doc_id}" for k in range(5)]})
    )
    return n_segments, cursor


def _write_annotations(rng, data_dir, doc_id, annotator, n_props, disagreement):
    alignments = []
    for summary in range(5):
        group = None
        for prop in range(n_props):
            if rng.random() >= 0.12 + disagreement:
                continue
            mode, kind = rng.choice(
                [("match", None), ("match", None), ("approximate", "trigger"),
                 ("approximate", "component")]
            )
            entry = {"summary": summary, "prop": prop, "mode": mode}
            if kind:
                entry["approx_kind"] = kind
            if rng.random() < 0.1:
                group = group or f"g{summary}"
                entry["duplicate_group"] = group
            alignments.append(entry)
    doc_dir = data_dir / doc_id
    doc_dir.mkdir(parents=True, exist_ok=True)
    (doc_dir / f"{annotator}.json").write_text(
        json.dumps(
            {
                "version": 1,
                "updated_at": "2026-01-01T00:00:00+00:00",
                "annotation": {
                    "doc_id": doc_id,
                    "annotator": annotator,
                    "schema_version": "1",
                    "alignments": alignments,
                },
            }
        )
    )


@pytest.fixture(scope="module")
def synthetic_corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("pilot_scale")
    corpus_dir = root / "corpus"
    corpus_dir.mkdir()
    data_dir = root / "annotations"
    rng = random.Random(60309)
    documents = []
    total_edus = 0
    for g, genre in enumerate(GENRES):
        for d in range(2):
            doc_id = f"{genre}_{d}"
            n_segments = rng.randint(100, 135)
            edus, _ = _write_doc(rng, corpus_dir, doc_id, n_segments)
            total_edus += edus
            # trees here have no same-unit groups, so propositions == EDUs
            _write_annotations(rng, data_dir, doc_id, "a1", n_segments, 0.0)
            _write_annotations(rng, data_dir, doc_id, "a2", n_segments, 0.02)
            documents.append(
                {
                    "doc_id": doc_id,
                    "rs3_path": f"corpus/{doc_id}.rs3",
                    "meta_path": f"corpus/{doc_id}.meta.json",
                    "summaries_path": f"corpus/{doc_id}.summaries.json",
                    "genre": genre,
                }
            )
    (root / "manifest.json").write_text(json.dumps({"documents": documents}))
    return root, total_edus


def test_ingest_at_scale(synthetic_corpus, capsys):
    root, total_edus = synthetic_corpus
    assert main(["ingest", str(root / "manifest.json")]) == 0
    out = capsys.readouterr().out
    total = [l for l in out.splitlines() if l.startswith("Total")][0]
    assert f"{total_edus:,}" in total
    assert f"{5 * total_edus:,}" in total
    assert "32" in total
    assert total_edus > 3200  # same order as the real test set


def test_agreement_at_scale(synthetic_corpus, capsys, tmp_path):
    root, _ = synthetic_corpus
    json_path = tmp_path / "agree.json"
    code = main([
        "agree", str(root / "manifest.json"), "--a", "a1", "--b", "a2",
        "--data", str(root / "annotations"), "--json", str(json_path),
    ])
    assert code == 0
    report = json.loads(json_path.read_text())
    rows = {r["scenario"]: r for r in report["scenarios"]}
    assert rows["strict_all"]["n_items"] > 15000  # EDUs x 5 summaries
    assert (
        rows["strict_all"]["accuracy_micro"]
        <= rows["strict_literal"]["accuracy_micro"]
        <= rows["strict_match"]["accuracy_micro"]
    )
    assert len(report["per_document"]) == 32


def test_analyze_at_scale(synthetic_corpus, capsys, tmp_path):
    root, total_edus = synthetic_corpus
    json_path = tmp_path / "analysis.json"
    code = main([
        "analyze", str(root / "manifest.json"), "--annotator", "a1",
        "--data", str(root / "annotations"), "--json", str(json_path),
    ])
    assert code == 0
    payload = json.loads(json_path.read_text())
    assert sum(payload["histogram"]) == total_edus
    model = payload["model"]
    assert model is not None
    lrt_features = {row["feature"] for row in model["lrt"]}
    assert lrt_features == {"position", "is_sent", "length", "relation", "centrality"}
    relation_row = next(r for r in model["lrt"] if r["feature"] == "relation")
    assert relation_row["npar"] >= 5  # several relation levels survive pooling
    assert model["n_params"] > 35  # intercept + features + relation + 31 doc dummies
    assert 0.5 <= model["majority_baseline"] <= 1.0
    assert model["training_accuracy"] >= model["majority_baseline"] - 1e-9
