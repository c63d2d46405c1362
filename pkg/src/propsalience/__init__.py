"""Graded proposition salience from multiple document summaries.

Builds tiled proposition markables from rs3 discourse trees, records
per-summary alignment annotations, scores salience, evaluates inter-annotator
agreement under four leniency scenarios, and relates salience to
discourse-tree centrality.
"""

__version__ = "0.1.0"

from .agreement import (
    SCENARIOS,
    AgreementItem,
    AgreementReport,
    AgreementTable,
    Scenario,
    aggregate,
    build_table,
    cohens_kappa,
    compute_report,
    percent_agreement,
)
from .annotations import (
    Alignment,
    AnnotationSchema,
    AnnotationSet,
    SalienceScores,
    SummarySet,
    duplicate_partition,
    load_annotations,
    salience_scores,
    save_annotations,
)
from .centrality import CentralityResult, distance_proportion, root_distance
from .corpus import (
    CorpusManifest,
    DocumentBundle,
    load_bundle,
    load_corpus,
    load_manifest,
    summarize_corpus,
)
from .errors import (
    AnnotationFormatError,
    DataError,
    InventoryError,
    MetaError,
    MetricUndefinedError,
    PropositionReferenceError,
    Rs3ParseError,
    SingularDesignError,
    StructuralError,
    TreeMetaMismatchError,
    VersionConflictError,
)
from .features import FeatureRow, extract_features
from .logistic import (
    LrtRow,
    ModelFit,
    build_design,
    drop_one_lrt,
    fit_design,
    fit_logistic,
    training_accuracy,
)
from .propositions import (
    DocumentMeta,
    Proposition,
    PropositionSequence,
    attachment_relation,
    load_document_meta,
    merge_same_units,
)
from .rs3 import RelationInventory, RstNode, RstTree, parse_rs3, serialize_rs3, validate
from .stats import CorrelationResult, pearson, score_histogram
from .storage import AnnotationStore, StoredAnnotation
from .treeviz import export_shaded_tree
