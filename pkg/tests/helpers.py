"""Random annotation generators shared by property and acceptance tests."""

import random

from propsalience import Alignment, AnnotationSet

MODES = [
    ("match", None),
    ("approximate", "trigger"),
    ("approximate", "component"),
]


def random_annotation_set(rng: random.Random, doc_id, annotator, n_props, n_summaries,
                          p_align=0.3, p_duplicate=0.2):
    alignments = []
    for summary_index in range(n_summaries):
        group_pool = [f"g{i}" for i in range(1 + rng.randrange(3))]
        for prop_index in range(n_props):
            if rng.random() >= p_align:
                continue
            mode, kind = rng.choice(MODES)
            duplicate_group = None
            if rng.random() < p_duplicate:
                duplicate_group = rng.choice(group_pool)
            alignments.append(
                Alignment(
                    summary_index=summary_index,
                    prop_index=prop_index,
                    mode=mode,
                    approx_kind=kind,
                    duplicate_group=duplicate_group,
                )
            )
    return AnnotationSet.from_alignments(doc_id, annotator, alignments)


def random_annotation_pair(rng: random.Random, doc_id="doc", n_props=None, n_summaries=None):
    n_props = n_props or rng.randint(1, 12)
    n_summaries = n_summaries or rng.randint(1, 5)
    a = random_annotation_set(rng, doc_id, "a", n_props, n_summaries)
    b = random_annotation_set(rng, doc_id, "b", n_props, n_summaries)
    return a, b, n_props, n_summaries
