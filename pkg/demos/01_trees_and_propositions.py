"""Parse an rs3 discourse tree and tile the document into propositions.

Every token of the document ends up in exactly one proposition: ordinary
EDUs become singletons, discontinuous EDUs (same-unit parts) are merged.
"""

from pathlib import Path

from propsalience import load_document_meta, merge_same_units, parse_rs3, validate

DATA = Path(__file__).parent / "data" / "toy_corpus"

tree = parse_rs3((DATA / "news_document.rs3").read_bytes(), doc_id="news_document")
print(f"parsed {len(tree.segments)} segments and {len(tree.groups)} groups")
print(f"relation inventory: {sorted(tree.inventory.entries)}")
print(f"validation diagnostics: {validate(tree)}")

meta = load_document_meta((DATA / "news_document.meta.json").read_bytes())
print(f"\n{meta.token_count} tokens in {len(meta.sentences)} sentences")

seq = merge_same_units(tree, meta)
print(f"\n{len(tree.segments)} EDUs tile into {len(seq)} propositions:")
for prop in seq:
    ranges = ", ".join(f"[{s},{e})" for s, e in prop.token_ranges)
    parts = "+".join(str(s) for s in prop.segment_ids)
    print(f"  {prop.index}: units {parts:<5} tokens {ranges:<18} {prop.text[:50]}")

# units 6 and 8 are one discontinuous proposition, interrupted by unit 7
merged = seq.by_segment(6)
print(f"\ndiscontinuous unit: {merged.text!r}")
print(f"covers token ranges {merged.token_ranges} (unit 7 sits in the gap)")
