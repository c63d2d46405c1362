"""Graded salience: how many of the five summaries mention each proposition.

Scores come from one annotator's per-summary alignments; matches and
approximate alignments (triggers, components) count alike, duplicate flags
do not change the count.
"""

import json
from pathlib import Path

from propsalience import load_annotations, load_bundle, load_manifest, salience_scores
from propsalience.stats import score_histogram

HERE = Path(__file__).parent
manifest = load_manifest(HERE / "data" / "toy_corpus" / "manifest.json")

score_sets = []
for entry in manifest.documents:
    bundle = load_bundle(entry)
    stored = json.loads((HERE / "data" / "annotations" / entry.doc_id / "a1.json").read_text())
    aset = load_annotations(json.dumps(stored["annotation"]).encode(), seq=bundle.seq)
    scores = salience_scores(aset, bundle.summary_count, n_props=len(bundle.seq))
    score_sets.append(scores)

    print(f"{entry.doc_id}:")
    for prop in bundle.seq:
        score = scores.score[prop.index]
        bar = "#" * score
        print(f"  {score} {bar:<5} {prop.text[:55]}")
    print()

counts = score_histogram(score_sets, 5)
print("score distribution over the toy corpus (score: propositions):")
for score, count in enumerate(counts):
    print(f"  {score}: {count}")
