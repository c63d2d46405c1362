"""Root-distance centrality: count satellite edges up to the document root.

Nucleus ('span') and multinuc edges are free; each satellite attachment
costs 1. The proportion normalizes by the document maximum, so 0 means
"heads the root" and 1 means "deepest unit in this document".
"""

from pathlib import Path

from propsalience import distance_proportion, load_document_meta, merge_same_units, parse_rs3, root_distance

DATA = Path(__file__).parent / "data" / "toy_corpus"

tree = parse_rs3((DATA / "story_cookies.rs3").read_bytes(), doc_id="story_cookies")
meta = load_document_meta((DATA / "story_cookies.meta.json").read_bytes())
seq = merge_same_units(tree, meta)

print("unit  d  text")
for prop in seq:
    unit = prop.segment_ids[0]
    print(f"  [{unit}]  {root_distance(tree, prop)}  {prop.text}")

# unit [2] heads the root span: d=0. Units [1] and [3] attach to it as
# satellites: d=1. The coordination of [4] and [5] is a satellite of [3],
# one more horizontal edge: d=2.

result = distance_proportion(tree, seq)
print(f"\nmax distance in document: {result.max_distance}")
print("proportions:", {i: round(p, 3) for i, p in sorted(result.proportion.items())})

# coordinate nuclei under one multinuc are equally central
assert result.raw_distance[3] == result.raw_distance[4]
print("\ncoordinate units [4] and [5] share the same distance, as expected")
