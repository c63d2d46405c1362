"""Root-distance centrality over discourse trees.

A unit's raw distance is the number of satellite edges on the path from the
unit to the root constituent: nucleus ('span') and multinuc edges are free,
satellite attachments cost 1. The normalized proportion runs from 0 (the unit
heads the root) to 1 (maximum distance in the document).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataError, StructuralError
from .propositions import Proposition, PropositionSequence
from .rs3 import SPAN, RstTree


@dataclass(frozen=True)
class CentralityResult:
    doc_id: str
    raw_distance: dict[int, int]  # proposition index -> satellite edge count
    proportion: dict[int, float]  # proposition index -> raw / max (0 when max is 0)
    max_distance: int


def root_distance(tree: RstTree, proposition: Proposition) -> int:
    """Count satellite edges between a proposition and the document root."""
    node = tree.node(proposition.first_segment)
    cost = 0
    hops = 0
    limit = len(tree.nodes) + 1
    while node.parent is not None:
        relname = node.relname
        if relname is not None and relname != SPAN and not tree.inventory.is_multinuc(relname):
            cost += 1
        node = tree.node(node.parent)
        hops += 1
        if hops > limit:
            raise StructuralError(f"{tree.doc_id}: parent chain does not terminate")
    return cost


def distance_proportion(tree: RstTree, seq: PropositionSequence) -> CentralityResult:
    if len(seq) == 0:
        raise DataError(f"{tree.doc_id}: cannot compute centrality for an empty sequence")
    raw = {prop.index: root_distance(tree, prop) for prop in seq}
    max_distance = max(raw.values())
    if max_distance > 0:
        proportion = {i: d / max_distance for i, d in raw.items()}
    else:
        proportion = {i: 0.0 for i in raw}
    return CentralityResult(
        doc_id=seq.doc_id, raw_distance=raw, proportion=proportion, max_distance=max_distance
    )
