"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 scorer failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import analysis, bridge, pipeline
from ._backend import BACKEND
from .clustering import read_clusters, write_clusters
from .corpus import load_corpus, stats
from .errors import DataError, ScorerError
from .heuristic import TuneObjective, tune_threshold
from .metrics import evaluate_assignments
from .pairs import TopicKey, generate_candidates
from .syn_pairs import extract_syn_pairs, write_syn_pairs

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SCORER = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _splits_arg(value: str) -> tuple[str, ...]:
    parts = tuple(s for s in value.split(",") if s)
    for s in parts:
        if s not in ("train", "dev", "test"):
            raise argparse.ArgumentTypeError(f"unknown split {s!r}")
    if not parts:
        raise argparse.ArgumentTypeError("empty split list")
    return parts


def _grid_arg(value: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in value.split(",") if s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid: {value!r}") from None


def _add_corpus_args(p: argparse.ArgumentParser, with_splits: bool = True) -> None:
    p.add_argument("--corpus", required=True, type=Path, help="mention JSONL file")
    p.add_argument("--documents", type=Path, default=None,
                   help="optional sidecar with full-document token lemmas")
    if with_splits:
        p.add_argument("--splits", type=_splits_arg, default=("test",),
                       help="comma-separated splits to operate on (default: test)")
    p.add_argument("--topic-key", choices=["topic", "subtopic"], default="topic")


def _add_heuristic_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--syn", default="train",
                   help="'train', 'oracle', or a syn-pair TSV file")
    p.add_argument("--min-count", type=int, default=1,
                   help="syn-pair frequency floor (default 1)")
    p.add_argument("--threshold", type=float, default=0.0,
                   help="sentence-overlap cutoff (strict >)")
    p.add_argument("--overlap", choices=["jaccard", "min"], default="jaccard")
    p.add_argument("--stop-lemmas", type=Path, default=None,
                   help="stop-lemma file (default: bundled English list)")
    p.add_argument("--exclude-same-sentence", action="store_true",
                   help="drop pairs whose mentions share a sentence")


def _config_from_args(args, out_dir: Optional[Path] = None) -> pipeline.RunConfig:
    return pipeline.RunConfig(
        corpus_path=args.corpus,
        out_dir=out_dir if out_dir is not None else Path("."),
        documents_path=args.documents,
        splits=getattr(args, "splits", ("test",)),
        topic_key=TopicKey(args.topic_key),
        syn_source=args.syn,
        min_count=args.min_count,
        heuristic=pipeline.default_heuristic_config(
            args.threshold, args.overlap, args.stop_lemmas),
        context=bridge.ContextMode(getattr(args, "context", "sentence")),
        scorer=getattr(args, "scorer", None),
        exclude_same_sentence=args.exclude_same_sentence,
    )


def _cmd_stats(args) -> int:
    corpus = load_corpus(args.corpus, None, args.documents)
    table = {split: s.as_dict() for split, s in stats(corpus).items()}
    print(json.dumps(table, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_syn_pairs(args) -> int:
    corpus = load_corpus(args.corpus, None, args.documents)
    splits = set(args.splits) if args.splits != ("all",) else corpus.splits()
    syn = extract_syn_pairs(corpus, splits, TopicKey(args.topic_key), args.min_count)
    write_syn_pairs(syn, args.out)
    print(f"wrote {len(syn)} syn pairs to {args.out}")
    return EXIT_OK


def _cmd_tune(args) -> int:
    config = _config_from_args(args)
    full = load_corpus(args.corpus, None, args.documents)
    syn = pipeline.resolve_syn_pairs(config, full)
    dev = full.subset({"dev"})
    if not dev.mentions:
        raise DataError("corpus has no dev split to tune on")
    chosen = tune_threshold(dev, syn, args.grid, TuneObjective(args.objective),
                            base_cfg=config.heuristic, key=config.topic_key,
                            exclude_same_sentence=config.exclude_same_sentence)
    print(json.dumps({"threshold": chosen}))
    return EXIT_OK


def _cmd_filter(args) -> int:
    config = _config_from_args(args)
    full = load_corpus(args.corpus, None, args.documents)
    syn = pipeline.resolve_syn_pairs(config, full)
    corpus = full.subset(config.splits)
    candidates = generate_candidates(corpus, config.topic_key, syn,
                                     exclude_same_sentence=config.exclude_same_sentence)
    from .heuristic import classify_pairs

    verdicts = classify_pairs(candidates, corpus, syn, config.heuristic)
    pipeline.write_verdicts(verdicts, args.out)
    kept = sum(v.heuristic_positive for v in verdicts)
    print(f"{len(verdicts)} candidates, {kept} accepted -> {args.out}")
    return EXIT_OK


def _cmd_export_train(args) -> int:
    config = _config_from_args(args)
    full = load_corpus(args.corpus, None, args.documents)
    syn = pipeline.resolve_syn_pairs(config, full)
    counts = pipeline.export_train_pairs(full, syn, config, args.out)
    print(json.dumps(counts))
    return EXIT_OK


def _cmd_cluster(args) -> int:
    full = load_corpus(args.corpus, None, args.documents)
    corpus = full.subset(args.splits)
    verdicts = pipeline.read_verdicts(args.verdicts)
    edges = {v.pair for v in verdicts if v.heuristic_positive}
    assignment = pipeline.cluster_from_edges(corpus, edges)
    write_clusters(assignment, args.out)
    print(f"{len(set(assignment.values()))} clusters -> {args.out}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    full = load_corpus(args.corpus, None, args.documents)
    corpus = full.subset(args.splits)
    predicted = read_clusters(args.clusters)
    report = evaluate_assignments(corpus.gold, predicted)
    print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    config = _config_from_args(args, out_dir=args.out)
    full = load_corpus(args.corpus, None, args.documents)
    syn = pipeline.resolve_syn_pairs(config, full)
    corpus = full.subset(config.splits)
    args.out.mkdir(parents=True, exist_ok=True)

    split_categories = pipeline.categorize_by_split(corpus, syn, config)
    analysis.write_distributions_csv(
        analysis.distribution_report(split_categories), args.out / "distributions.csv")

    if args.clusters is not None:
        assignment = read_clusters(args.clusters)
        analysis.write_purity_csv(
            analysis.purity_ranking(assignment, corpus.gold), args.out / "purity.csv")
        edges = None
        if args.edges is not None:
            from .pairs import read_pairs

            edges = read_pairs(args.edges)
        analysis.write_errors_jsonl(
            analysis.error_pairs(assignment, corpus.gold, corpus, edges),
            args.out / "errors.jsonl")
    print(f"analysis artifacts -> {args.out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    config = _config_from_args(args, out_dir=args.out)
    result = pipeline.run(config)
    summary = {"heuristic_conll_f1": result.heuristic_report.conll_f1}
    if result.discriminator_report is not None:
        summary["discriminator_conll_f1"] = result.discriminator_report.conll_f1
    print(json.dumps(summary))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lemcoref",
                     description="Two-stage event coreference pipeline")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s 0.1.0 (kernel backend: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="per-split corpus statistics")
    _add_corpus_args(p, with_splits=False)

    p = sub.add_parser("syn-pairs", help="harvest synonymous lemma pairs")
    _add_corpus_args(p, with_splits=False)
    p.add_argument("--splits", type=lambda v: tuple(v.split(",")), default=("train",),
                   help="harvest splits, or 'all' (default: train)")
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("tune", help="grid-search the overlap threshold on dev")
    _add_corpus_args(p, with_splits=False)
    _add_heuristic_args(p)
    p.add_argument("--grid", type=_grid_arg,
                   default=tuple(round(0.01 * i, 2) for i in range(0, 51, 5)))
    p.add_argument("--objective", choices=[o.value for o in TuneObjective],
                   default="conll")

    p = sub.add_parser("filter", help="classify candidate pairs")
    _add_corpus_args(p)
    _add_heuristic_args(p)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("export-train", help="balanced training-pair export")
    _add_corpus_args(p, with_splits=False)
    _add_heuristic_args(p)
    p.add_argument("--context", choices=["sentence", "document"], default="sentence")
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("cluster", help="connected components from verdicts")
    _add_corpus_args(p)
    p.add_argument("--verdicts", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("evaluate", help="score a clustering against gold")
    _add_corpus_args(p)
    p.add_argument("--clusters", required=True, type=Path)

    p = sub.add_parser("analyze", help="distributions, purity, error listing")
    _add_corpus_args(p)
    _add_heuristic_args(p)
    p.add_argument("--clusters", type=Path, default=None)
    p.add_argument("--edges", type=Path, default=None,
                   help="decided-edge JSONL for false-positive listing")
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("run", help="full pipeline")
    _add_corpus_args(p)
    _add_heuristic_args(p)
    p.add_argument("--context", choices=["sentence", "document"], default="sentence")
    p.add_argument("--scorer", default=None,
                   help="external scorer command; called with request and score paths")
    p.add_argument("--out", required=True, type=Path)

    return parser


_COMMANDS = {
    "stats": _cmd_stats,
    "syn-pairs": _cmd_syn_pairs,
    "tune": _cmd_tune,
    "filter": _cmd_filter,
    "export-train": _cmd_export_train,
    "cluster": _cmd_cluster,
    "evaluate": _cmd_evaluate,
    "analyze": _cmd_analyze,
    "run": _cmd_run,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ScorerError as exc:
        print(f"lemcoref: scorer failure: {exc}", file=sys.stderr)
        return EXIT_SCORER
    except (DataError, OSError) as exc:
        print(f"lemcoref: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
