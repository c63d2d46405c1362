"""Per-proposition analysis records combining salience with tree features."""

from __future__ import annotations

from dataclasses import dataclass

from .centrality import CentralityResult
from .errors import DataError, MetaError
from .propositions import DocumentMeta, PropositionSequence, attachment_relation
from .rs3 import RstTree


@dataclass(frozen=True)
class FeatureRow:
    doc_id: str
    prop_index: int
    salience: int
    centrality: float  # distance proportion, 0 = heads the root
    position: float  # prop_index / (N - 1), 0 for single-unit documents
    length: int  # token count
    is_sent: bool  # proposition exactly tiles one sentence
    relation: str

    @property
    def binary(self):
        """Modeling outcome: mentioned by at least one summary."""
        return self.salience >= 1


def _merged_block(token_ranges):
    """Collapse sorted disjoint ranges; None unless they form one contiguous block."""
    start, end = token_ranges[0]
    for s, e in token_ranges[1:]:
        if s != end:
            return None
        end = e
    return (start, end)


def extract_features(
    seq: PropositionSequence,
    meta: DocumentMeta,
    centrality_result: CentralityResult,
    scores,
    tree: RstTree,
) -> list[FeatureRow]:
    """One FeatureRow per proposition, all inputs for the same document."""
    if not meta.sentences:
        raise MetaError(f"{meta.doc_id}: sentence ranges are required for feature extraction")
    sentence_set = set(meta.sentences)
    n = len(seq)
    rows = []
    for prop in seq:
        if prop.length == 0:
            raise DataError(f"{seq.doc_id}: proposition {prop.index} spans zero tokens")
        block = _merged_block(prop.token_ranges)
        rows.append(
            FeatureRow(
                doc_id=seq.doc_id,
                prop_index=prop.index,
                salience=scores.score[prop.index],
                centrality=centrality_result.proportion[prop.index],
                position=prop.index / (n - 1) if n > 1 else 0.0,
                length=prop.length,
                is_sent=block in sentence_set,
                relation=attachment_relation(tree, prop),
            )
        )
    return rows


FEATURE_CSV_HEADER = "doc_id,prop_index,salience,binary,centrality,position,length,is_sent,relation"


def feature_csv_lines(rows) -> list[str]:
    lines = [FEATURE_CSV_HEADER]
    for row in rows:
        relation = row.relation.replace('"', '""')
        if "," in relation:
            relation = f'"{relation}"'
        lines.append(
            f"{row.doc_id},{row.prop_index},{row.salience},{int(row.binary)},"
            f"{row.centrality:.12g},{row.position:.12g},{row.length},{int(row.is_sent)},{relation}"
        )
    return lines
