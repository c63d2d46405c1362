"""Export a discourse tree as DOT with units shaded by their salience score.

Score 0 stays white; 1 is pale yellow, up to 5 = red. Render the output with
graphviz, e.g.:  dot -Tpng news_document.dot -o news_document.png
"""

import json
from pathlib import Path

from propsalience import export_shaded_tree, load_annotations, load_bundle, load_manifest, salience_scores

HERE = Path(__file__).parent
manifest = load_manifest(HERE / "data" / "toy_corpus" / "manifest.json")
entry = manifest.entry("news_document")
bundle = load_bundle(entry)

stored = json.loads((HERE / "data" / "annotations" / "news_document" / "a1.json").read_text())
aset = load_annotations(json.dumps(stored["annotation"]).encode(), seq=bundle.seq)
scores = salience_scores(aset, bundle.summary_count, n_props=len(bundle.seq))

dot = export_shaded_tree(bundle.tree, bundle.seq, scores, bundle.summary_count)
out = HERE / "news_document.dot"
out.write_text(dot, encoding="utf-8")

print(dot)
print(f"written to {out}")
print("satellite edges carry arrowheads; nucleus and multinuc edges are plain")
