"""Inter-annotator agreement under the four leniency scenarios.

strict_all keeps every (summary, proposition) item; strict_literal
disregards disagreements involving component alignments; strict_match also
disregards approximate ones; duplicates_ok treats duplicate-linked
propositions as interchangeable. Because the filters only ever remove
disagreeing items, accuracy is monotone over the first three scenarios.
"""

import json
from pathlib import Path

from propsalience import compute_report, load_annotations, load_bundle, load_manifest

HERE = Path(__file__).parent
manifest = load_manifest(HERE / "data" / "toy_corpus" / "manifest.json")

doc_pairs = {}
for entry in manifest.documents:
    bundle = load_bundle(entry)
    sets = {}
    for annotator in ("a1", "a2"):
        stored = json.loads(
            (HERE / "data" / "annotations" / entry.doc_id / f"{annotator}.json").read_text()
        )
        sets[annotator] = load_annotations(json.dumps(stored["annotation"]).encode(), seq=bundle.seq)
    doc_pairs[entry.doc_id] = (sets["a1"], sets["a2"], bundle.seq, bundle.summary_count)

report = compute_report(doc_pairs, "a1", "a2")

print(f"{'scenario':<16}{'acc micro':>10}{'acc macro':>10}{'k micro':>10}{'k macro':>10}{'items':>8}")
for row in report.rows:
    print(
        f"{row.scenario.label:<16}{row.accuracy_micro:>10.2f}{row.accuracy_macro:>10.2f}"
        f"{100 * row.kappa_micro:>10.2f}{100 * row.kappa_macro:>10.2f}{row.n_items:>8}"
    )

print("\nper-document kappa (x100):")
for doc_id, by_scenario in report.per_document.items():
    values = "  ".join(
        f"{scenario.value}={100 * kappa:.1f}" for scenario, (_, kappa) in by_scenario.items()
    )
    print(f"  {doc_id}: {values}")
