"""Command-line driver: corpus ingestion, scoring, agreement, analysis, serving.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 requested
metric undefined on the input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .agreement import SCENARIOS, compute_report
from .annotations import salience_scores
from .centrality import distance_proportion
from .corpus import load_corpus, load_manifest, load_schema, summarize_corpus
from .errors import DataError, MetricUndefinedError
from .features import extract_features, feature_csv_lines
from .logistic import DEFAULT_FEATURES, build_design, drop_one_lrt, fit_design, training_accuracy
from .stats import pearson, score_histogram
from .storage import AnnotationStore
from .treeviz import export_shaded_tree

DEFAULT_DATA_DIR = "annotations"


def data_dir_from(args) -> Path:
    if args.data:
        return Path(args.data)
    env = os.environ.get("SALIENCE_DATA_DIR")
    if env:
        return Path(env)
    return Path(DEFAULT_DATA_DIR)


def _write_or_print(text, out_path):
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_ingest(args) -> int:
    manifest = load_manifest(args.manifest)
    bundles = load_corpus(manifest, same_unit=args.same_unit)
    summary = summarize_corpus(bundles)
    header = f"{'Genre':<16}{'Docs':>6}{'Tokens':>10}{'EDUs':>8}{'Alignments':>12}"
    print(header)
    print("-" * len(header))
    for row in summary.genres:
        print(
            f"{row.genre:<16}{row.docs:>6}{row.tokens:>10,}{row.edus:>8,}{row.alignment_slots:>12,}"
        )
    print("-" * len(header))
    total = summary.total
    print(
        f"{total.genre:<16}{total.docs:>6}{total.tokens:>10,}{total.edus:>8,}{total.alignment_slots:>12,}"
    )
    n_props = sum(len(b.seq) for b in bundles)
    print(f"\npropositions after same-unit merging: {n_props:,}")
    return 0


def cmd_centrality(args) -> int:
    manifest = load_manifest(args.manifest)
    lines = ["doc_id,prop_index,raw_distance,proportion"]
    for bundle in load_corpus(manifest, same_unit=args.same_unit):
        result = distance_proportion(bundle.tree, bundle.seq)
        for prop in bundle.seq:
            lines.append(
                f"{bundle.doc_id},{prop.index},{result.raw_distance[prop.index]},"
                f"{result.proportion[prop.index]:.12g}"
            )
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def _load_annotated(bundles, store, annotator):
    """(bundle, AnnotationSet) pairs for documents the annotator has stored."""
    annotated = []
    for bundle in bundles:
        stored = store.load(bundle.doc_id, annotator, seq=bundle.seq)
        if stored is None:
            print(f"warning: no annotations by {annotator!r} for {bundle.doc_id}; skipped",
                  file=sys.stderr)
            continue
        annotated.append((bundle, stored.annotation))
    if not annotated:
        raise DataError(f"no stored annotations found for annotator {annotator!r}")
    return annotated


def cmd_score(args) -> int:
    manifest = load_manifest(args.manifest)
    store = AnnotationStore(data_dir_from(args))
    bundles = load_corpus(manifest, same_unit=args.same_unit)
    lines = ["doc_id,prop_index,score"]
    for bundle, aset in _load_annotated(bundles, store, args.annotator):
        scores = salience_scores(aset, bundle.summary_count, n_props=len(bundle.seq))
        for prop in bundle.seq:
            lines.append(f"{bundle.doc_id},{prop.index},{scores.score[prop.index]}")
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def cmd_agree(args) -> int:
    manifest = load_manifest(args.manifest)
    store = AnnotationStore(data_dir_from(args))
    bundles = load_corpus(manifest, same_unit=args.same_unit)
    doc_pairs = {}
    for bundle in bundles:
        stored_a = store.load(bundle.doc_id, args.a, seq=bundle.seq)
        stored_b = store.load(bundle.doc_id, args.b, seq=bundle.seq)
        if stored_a is None or stored_b is None:
            missing = args.a if stored_a is None else args.b
            print(f"warning: {bundle.doc_id} lacks annotations by {missing!r}; skipped",
                  file=sys.stderr)
            continue
        doc_pairs[bundle.doc_id] = (
            stored_a.annotation,
            stored_b.annotation,
            bundle.seq,
            bundle.summary_count,
        )
    if not doc_pairs:
        raise DataError(f"no documents annotated by both {args.a!r} and {args.b!r}")
    report = compute_report(doc_pairs, annotator_a=args.a, annotator_b=args.b)

    print(f"{'metric':<16}{'acc micro':>10}{'acc macro':>10}{'k micro':>10}{'k macro':>10}")
    for row in report.rows:
        print(
            f"{row.scenario.label:<16}{row.accuracy_micro:>10.2f}{row.accuracy_macro:>10.2f}"
            f"{100 * row.kappa_micro:>10.2f}{100 * row.kappa_macro:>10.2f}"
        )
        for doc_id in row.skipped_docs:
            print(f"  (empty table for {doc_id} under {row.scenario.value}; skipped in macro)")
    if args.json:
        payload = {
            "annotator_a": args.a,
            "annotator_b": args.b,
            "scenarios": [
                {
                    "scenario": row.scenario.value,
                    "accuracy_micro": row.accuracy_micro,
                    "accuracy_macro": row.accuracy_macro,
                    "kappa_micro": row.kappa_micro,
                    "kappa_macro": row.kappa_macro,
                    "n_items": row.n_items,
                    "skipped_docs": list(row.skipped_docs),
                }
                for row in report.rows
            ],
            "per_document": {
                doc_id: {
                    scenario.value: {"accuracy": acc, "kappa": kappa}
                    for scenario, (acc, kappa) in by_scenario.items()
                }
                for doc_id, by_scenario in report.per_document.items()
            },
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.csv:
        lines = ["scenario,accuracy_micro,accuracy_macro,kappa_micro,kappa_macro"]
        for row in report.rows:
            lines.append(
                f"{row.scenario.value},{row.accuracy_micro:.6g},{row.accuracy_macro:.6g},"
                f"{100 * row.kappa_micro:.6g},{100 * row.kappa_macro:.6g}"
            )
        Path(args.csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def cmd_analyze(args) -> int:
    manifest = load_manifest(args.manifest)
    store = AnnotationStore(data_dir_from(args))
    bundles = load_corpus(manifest, same_unit=args.same_unit)
    annotated = _load_annotated(bundles, store, args.annotator)

    all_rows = []
    score_sets = []
    summary_count = max(b.summary_count for b, _ in annotated)
    for bundle, aset in annotated:
        scores = salience_scores(aset, bundle.summary_count, n_props=len(bundle.seq))
        score_sets.append(scores)
        result = distance_proportion(bundle.tree, bundle.seq)
        all_rows.extend(extract_features(bundle.seq, bundle.meta, result, scores, bundle.tree))
        if args.dot_out:
            dot_dir = Path(args.dot_out)
            dot_dir.mkdir(parents=True, exist_ok=True)
            dot = export_shaded_tree(bundle.tree, bundle.seq, scores, bundle.summary_count)
            (dot_dir / f"{bundle.doc_id}.dot").write_text(dot, encoding="utf-8")

    counts = score_histogram(score_sets, summary_count)
    print("salience score distribution:")
    for score, count in enumerate(counts):
        print(f"  {score}: {count}")

    outcome = [row.salience if not args.binary_outcome else int(row.binary) for row in all_rows]
    correlations = {}
    for name in ("centrality", "position"):
        values = [getattr(row, name) for row in all_rows]
        try:
            result = pearson(values, outcome)
            correlations[name] = result
            print(f"pearson r({name}, salience) = {result.r:.4f} (p = {result.p_value:.3g}, n = {result.n})")
        except MetricUndefinedError as exc:
            print(f"pearson r({name}, salience): undefined ({exc})")

    if args.features_csv:
        Path(args.features_csv).write_text(
            "\n".join(feature_csv_lines(all_rows)) + "\n", encoding="utf-8"
        )

    lrt_rows = []
    fit = None
    accuracy = baseline = None
    try:
        design = build_design(
            all_rows,
            features=DEFAULT_FEATURES,
            group_key="doc_id",
            min_relation_count=args.min_relation_count,
        )
        fit = fit_design(design)
        accuracy = training_accuracy(design, fit)
        baseline = max(design.y.mean(), 1 - design.y.mean())
        lrt_rows = drop_one_lrt(
            all_rows,
            features=DEFAULT_FEATURES,
            group_key="doc_id",
            min_relation_count=args.min_relation_count,
        )
        print("\nsalience model (fixed-effect document intercepts), single term deletions:")
        print(f"{'feature':<12}{'npar':>6}{'AIC':>12}{'LRT':>10}{'Pr(chi2)':>12}")
        print(f"{'<none>':<12}{'':>6}{fit.aic:>12.1f}{'':>10}{'':>12}")
        for row in lrt_rows:
            flag = "" if row.converged else "  (no convergence)"
            print(
                f"{row.feature:<12}{row.npar_delta:>6}{row.aic:>12.1f}{row.lrt_statistic:>10.3f}"
                f"{row.p_value:>12.3g}{flag}"
            )
        print(
            f"training accuracy {100 * accuracy:.2f} vs majority baseline {100 * baseline:.2f}"
        )
        if not fit.converged:
            print(f"note: full model fit: {fit.diagnostic}")
    except DataError as exc:
        print(f"model fitting skipped: {exc}")

    if args.json:
        payload = {
            "histogram": counts,
            "correlations": {
                name: {"r": c.r, "p_value": c.p_value, "n": c.n}
                for name, c in correlations.items()
            },
            "model": None
            if fit is None
            else {
                "log_likelihood": fit.log_likelihood,
                "aic": fit.aic,
                "n_params": fit.n_params,
                "converged": fit.converged,
                "training_accuracy": accuracy,
                "majority_baseline": baseline,
                "lrt": [
                    {
                        "feature": row.feature,
                        "npar": row.npar_delta,
                        "aic": row.aic,
                        "lrt": row.lrt_statistic,
                        "p_value": row.p_value,
                        "converged": row.converged,
                    }
                    for row in lrt_rows
                ],
            },
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_serve(args) -> int:
    from .server import AnnotationService, serve_forever

    manifest = load_manifest(args.manifest)
    bundles = load_corpus(manifest, same_unit=args.same_unit)
    schema = load_schema(manifest)
    store = AnnotationStore(data_dir_from(args))
    try:
        host, port = args.bind.rsplit(":", 1)
        port = int(port)
    except ValueError:
        raise DataError(f"--bind expects HOST:PORT, got {args.bind!r}") from None
    service = AnnotationService(bundles, store, schema=schema, static_dir=args.static)
    serve_forever(service, host, port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="propsalience",
        description="Summary-based graded proposition salience toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=False):
        p.add_argument("manifest", help="corpus manifest JSON")
        p.add_argument("--same-unit", default="same-unit",
                       help="relation name marking discontinuous units (default: same-unit)")
        if data:
            p.add_argument("--data", default=None,
                           help="annotation data directory (default: $SALIENCE_DATA_DIR or ./annotations)")

    p = sub.add_parser("ingest", help="parse and validate the corpus; print genre totals")
    common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("centrality", help="root-distance centrality CSV per proposition")
    common(p)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("score", help="salience score CSV for one annotator")
    common(p, data=True)
    p.add_argument("--annotator", required=True)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("agree", help="four-scenario inter-annotator agreement")
    common(p, data=True)
    p.add_argument("--a", required=True, help="first annotator")
    p.add_argument("--b", required=True, help="second annotator")
    p.add_argument("--json", default=None, help="write machine-readable report here")
    p.add_argument("--csv", default=None, help="write per-scenario CSV here")
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("analyze", help="salience distribution, correlations and model")
    common(p, data=True)
    p.add_argument("--annotator", required=True)
    p.add_argument("--features-csv", default=None, help="write per-proposition features here")
    p.add_argument("--json", default=None, help="write machine-readable report here")
    p.add_argument("--dot-out", default=None, help="write salience-shaded DOT trees into this directory")
    p.add_argument("--binary-outcome", action="store_true",
                   help="correlate against the binary outcome instead of the 0..S score")
    p.add_argument("--min-relation-count", type=int, default=5,
                   help="pool relation labels rarer than this into OTHER (default: 5)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    common(p, data=True)
    p.add_argument("--bind", default="127.0.0.1:8765", help="HOST:PORT (default: 127.0.0.1:8765)")
    p.add_argument("--static", default=None, help="directory with the UI bundle to serve")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except MetricUndefinedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
