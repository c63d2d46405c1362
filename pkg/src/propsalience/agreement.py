"""Inter-annotator agreement under four increasingly lenient scenarios.

Each scenario yields a table of items with one binary label per annotator
("aligned in this summary" or not). Leniency grows by disregarding
disagreements that involve component alignments, then any approximate
alignment, and finally by treating duplicate-linked propositions as
interchangeable. Percent agreement and Cohen's kappa are computed per table
and aggregated micro (pooled items) or macro (unweighted mean over documents).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .annotations import MODE_APPROXIMATE, AnnotationSet, duplicate_partition
from .errors import DataError, MetricUndefinedError
from .propositions import PropositionSequence


class Scenario(enum.Enum):
    STRICT_ALL = "strict_all"
    STRICT_LITERAL = "strict_literal"
    STRICT_MATCH = "strict_match"
    DUPLICATES_OK = "duplicates_ok"

    @property
    def leniency(self):
        return _LENIENCY[self]

    @property
    def label(self):
        return _LABELS[self]


_LENIENCY = {
    Scenario.STRICT_ALL: 0,
    Scenario.STRICT_LITERAL: 1,
    Scenario.STRICT_MATCH: 2,
    Scenario.DUPLICATES_OK: 3,
}

_LABELS = {
    Scenario.STRICT_ALL: "strict all",
    Scenario.STRICT_LITERAL: "strict literal",
    Scenario.STRICT_MATCH: "strict match",
    Scenario.DUPLICATES_OK: "duplicates OK",
}

SCENARIOS = tuple(sorted(Scenario, key=lambda s: s.leniency))


@dataclass(frozen=True)
class AgreementItem:
    doc_id: str
    summary_index: int
    item_key: int  # proposition index, or the smallest member of a duplicate class
    label_a: bool
    label_b: bool

    @property
    def agree(self):
        return self.label_a == self.label_b


@dataclass(frozen=True)
class AgreementTable:
    items: tuple[AgreementItem, ...] = ()

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def counts(self):
        """2x2 contingency counts (both, a_only, b_only, neither)."""
        both = a_only = b_only = neither = 0
        for item in self.items:
            if item.label_a and item.label_b:
                both += 1
            elif item.label_a:
                a_only += 1
            elif item.label_b:
                b_only += 1
            else:
                neither += 1
        return both, a_only, b_only, neither


def pool_tables(tables) -> AgreementTable:
    items = []
    for table in tables:
        items.extend(table.items)
    return AgreementTable(items=tuple(items))


def _strict_match_keep(a, b, summary_index, prop_index, drop_components, drop_approximates):
    """Whether the item survives the literal/match filters."""
    aligned_a = a.get(summary_index, prop_index)
    aligned_b = b.get(summary_index, prop_index)
    if (aligned_a is None) == (aligned_b is None):
        return True  # agreeing items are never dropped
    present = aligned_a if aligned_a is not None else aligned_b
    if drop_components and present.is_component:
        return False
    if drop_approximates and present.mode == MODE_APPROXIMATE:
        return False
    return True


def build_table(
    a: AnnotationSet,
    b: AnnotationSet,
    seq: PropositionSequence,
    summary_count: int,
    scenario: Scenario,
) -> AgreementTable:
    """Item-level paired labels for two annotators under one scenario."""
    if a.doc_id != b.doc_id:
        raise DataError(f"annotation sets are for different documents: {a.doc_id} vs {b.doc_id}")
    doc_id = a.doc_id
    n_props = len(seq)
    drop_components = scenario.leniency >= Scenario.STRICT_LITERAL.leniency
    drop_approximates = scenario.leniency >= Scenario.STRICT_MATCH.leniency

    items = []
    for summary_index in range(summary_count):
        retained = [
            p
            for p in range(n_props)
            if _strict_match_keep(a, b, summary_index, p, drop_components, drop_approximates)
        ]
        if scenario is Scenario.DUPLICATES_OK:
            retained_set = set(retained)
            for group in duplicate_partition(a, b, summary_index, n_props):
                members = group & retained_set
                if not members:
                    continue
                items.append(
                    AgreementItem(
                        doc_id=doc_id,
                        summary_index=summary_index,
                        item_key=min(members),
                        label_a=any(a.has(summary_index, p) for p in members),
                        label_b=any(b.has(summary_index, p) for p in members),
                    )
                )
        else:
            for prop_index in retained:
                items.append(
                    AgreementItem(
                        doc_id=doc_id,
                        summary_index=summary_index,
                        item_key=prop_index,
                        label_a=a.has(summary_index, prop_index),
                        label_b=b.has(summary_index, prop_index),
                    )
                )
    return AgreementTable(items=tuple(items))


def percent_agreement(table: AgreementTable) -> float:
    """Share of items with identical labels, in percent."""
    if len(table) == 0:
        raise MetricUndefinedError("percent agreement is undefined on an empty table")
    matching = sum(1 for item in table if item.agree)
    return 100.0 * matching / len(table)


def cohens_kappa(table: AgreementTable) -> float:
    """Chance-corrected agreement (p_o - p_e) / (1 - p_e) for binary labels.

    When both marginals are degenerate (p_e = 1) the value is 1.0 for perfect
    observed agreement and 0.0 otherwise, by convention.
    """
    if len(table) == 0:
        raise MetricUndefinedError("kappa is undefined on an empty table")
    both, a_only, b_only, neither = table.counts()
    n = len(table)
    observed = both + neither
    a_pos, b_pos = both + a_only, both + b_only
    # integer arithmetic keeps the degenerate-marginal check exact
    expected_num = a_pos * b_pos + (n - a_pos) * (n - b_pos)
    if expected_num == n * n:
        return 1.0 if observed == n else 0.0
    p_o = observed / n
    p_e = expected_num / (n * n)
    return (p_o - p_e) / (1.0 - p_e)


def aggregate(per_doc: list[AgreementTable], mode: str) -> tuple[float, float]:
    """(accuracy, kappa) pooled over items (micro) or averaged over documents
    (macro, unweighted; empty per-document tables are skipped)."""
    if mode not in ("micro", "macro"):
        raise ValueError(f"unknown aggregation mode {mode!r}")
    non_empty = [t for t in per_doc if len(t) > 0]
    if not non_empty:
        raise MetricUndefinedError("all per-document tables are empty")
    if mode == "micro":
        pooled = pool_tables(non_empty)
        return percent_agreement(pooled), cohens_kappa(pooled)
    accuracies = [percent_agreement(t) for t in non_empty]
    kappas = [cohens_kappa(t) for t in non_empty]
    return sum(accuracies) / len(accuracies), sum(kappas) / len(kappas)


@dataclass(frozen=True)
class ScenarioMetrics:
    scenario: Scenario
    accuracy_micro: float
    accuracy_macro: float
    kappa_micro: float
    kappa_macro: float
    n_items: int
    skipped_docs: tuple[str, ...] = ()


@dataclass(frozen=True)
class AgreementReport:
    annotator_a: str
    annotator_b: str
    rows: tuple[ScenarioMetrics, ...]
    per_document: dict[str, dict[Scenario, tuple[float, float]]] = field(default_factory=dict)

    def row(self, scenario: Scenario) -> ScenarioMetrics:
        for row in self.rows:
            if row.scenario is scenario:
                return row
        raise KeyError(scenario)


def compute_report(
    doc_pairs: dict[str, tuple[AnnotationSet, AnnotationSet, PropositionSequence, int]],
    annotator_a: str = "A",
    annotator_b: str = "B",
) -> AgreementReport:
    """Four-scenario micro/macro report over a corpus of paired annotations."""
    rows = []
    per_document: dict[str, dict[Scenario, tuple[float, float]]] = {}
    for scenario in SCENARIOS:
        tables = {
            doc_id: build_table(a, b, seq, s_count, scenario)
            for doc_id, (a, b, seq, s_count) in sorted(doc_pairs.items())
        }
        skipped = tuple(doc_id for doc_id, t in tables.items() if len(t) == 0)
        acc_mi, kap_mi = aggregate(list(tables.values()), "micro")
        acc_ma, kap_ma = aggregate(list(tables.values()), "macro")
        for doc_id, table in tables.items():
            if len(table) == 0:
                continue
            per_document.setdefault(doc_id, {})[scenario] = (
                percent_agreement(table),
                cohens_kappa(table),
            )
        rows.append(
            ScenarioMetrics(
                scenario=scenario,
                accuracy_micro=acc_mi,
                accuracy_macro=acc_ma,
                kappa_micro=kap_mi,
                kappa_macro=kap_ma,
                n_items=sum(len(t) for t in tables.values()),
                skipped_docs=skipped,
            )
        )
    return AgreementReport(
        annotator_a=annotator_a,
        annotator_b=annotator_b,
        rows=tuple(rows),
        per_document=per_document,
    )
