"""End-to-end orchestration shared by the CLI subcommands.

A run produces a fixed set of artifact files in the output directory; the
whole pipeline is deterministic, so rerunning with identical inputs and
configuration yields byte-identical artifacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import analysis, bridge
from .clustering import ClusterAssignment, CorefGraph, connected_components, write_clusters, write_conll
from .corpus import Corpus, load_corpus
from .errors import DataError
from .heuristic import (
    CategoryResult,
    HeuristicConfig,
    PairVerdict,
    categorize_pairs,
    classify_pairs,
    load_default_stop_lemmas,
)
from .metrics import MetricReport, evaluate_assignments
from .pairs import Pair, TopicKey, all_pairs, generate_candidates, write_pairs
from .syn_pairs import SynPairSet, extract_syn_pairs, read_syn_pairs, write_syn_pairs


@dataclass
class RunConfig:
    corpus_path: Path
    out_dir: Path
    documents_path: Optional[Path] = None
    splits: tuple[str, ...] = ("test",)
    topic_key: TopicKey = TopicKey.TOPIC
    syn_source: str = "train"  # "train" | "oracle" | path to a TSV file
    min_count: int = 1
    heuristic: HeuristicConfig = field(default_factory=HeuristicConfig)
    context: bridge.ContextMode = bridge.ContextMode.SENTENCE
    scorer: Optional[str] = None
    exclude_same_sentence: bool = False
    seed: int = 0  # reserved; the pipeline itself is sampling-free


def resolve_syn_pairs(config: RunConfig, corpus: Corpus) -> SynPairSet:
    if config.syn_source == "train":
        return extract_syn_pairs(corpus, {"train"}, config.topic_key, config.min_count)
    if config.syn_source == "oracle":
        return extract_syn_pairs(corpus, corpus.splits(), config.topic_key, config.min_count)
    return read_syn_pairs(config.syn_source, config.min_count)


def write_verdicts(verdicts: list[PairVerdict], path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for v in sorted(verdicts, key=lambda v: v.pair):
            fh.write(json.dumps({
                "a": v.pair[0],
                "b": v.pair[1],
                "positive": v.heuristic_positive,
                "overlap": v.overlap_score,
                "rule": v.matched_rule.value if v.matched_rule is not None else None,
            }) + "\n")


def read_verdicts(path: Path) -> list[PairVerdict]:
    from .heuristic import Rule

    out: list[PairVerdict] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            out.append(PairVerdict(
                pair=(record["a"], record["b"]),
                heuristic_positive=record["positive"],
                overlap_score=record["overlap"],
                matched_rule=Rule(record["rule"]) if record["rule"] else None,
            ))
    return out


def cluster_from_edges(corpus: Corpus, edges: set[Pair]) -> ClusterAssignment:
    nodes = frozenset(m.mention_id for m in corpus.mentions)
    return connected_components(CorefGraph(nodes=nodes, edges=frozenset(edges)))


def write_metrics(report: MetricReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")


def categorize_by_split(
    corpus: Corpus,
    syn: SynPairSet,
    config: RunConfig,
) -> dict[str, CategoryResult]:
    """Full four-way categorization over the complete pair space, per split."""
    out: dict[str, CategoryResult] = {}
    for split in sorted(corpus.splits()):
        sub = corpus.subset({split})
        pairs = all_pairs(sub, config.topic_key,
                          exclude_same_sentence=config.exclude_same_sentence)
        verdicts = classify_pairs(pairs, sub, syn, config.heuristic)
        out[split] = categorize_pairs(verdicts, sub.gold)
    return out


def default_heuristic_config(threshold: float, overlap: str,
                             stop_lemmas_path: Optional[Path]) -> HeuristicConfig:
    from .heuristic import OverlapMeasure

    if stop_lemmas_path is not None:
        with open(stop_lemmas_path, encoding="utf-8") as fh:
            stops = frozenset(line.strip() for line in fh
                              if line.strip() and not line.startswith("#"))
    else:
        stops = load_default_stop_lemmas()
    return HeuristicConfig(
        threshold=threshold,
        stop_lemmas=stops,
        overlap_measure=OverlapMeasure(overlap),
    )


@dataclass
class RunResult:
    heuristic_report: MetricReport
    discriminator_report: Optional[MetricReport]
    artifacts: list[str]


def run(config: RunConfig) -> RunResult:
    """Execute the full prediction pipeline and write all artifacts."""
    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    artifacts: list[str] = []

    def emit(name: str) -> Path:
        artifacts.append(name)
        return out / name

    full = load_corpus(config.corpus_path, None, config.documents_path)
    syn = resolve_syn_pairs(config, full)
    write_syn_pairs(syn, emit("syn_pairs.tsv"))

    corpus = full.subset(config.splits)
    if not corpus.mentions:
        raise DataError(f"no mentions in splits {sorted(config.splits)}")

    candidates = generate_candidates(
        corpus, config.topic_key, syn,
        exclude_same_sentence=config.exclude_same_sentence)
    write_pairs(candidates, emit("candidates.jsonl"))

    verdicts = classify_pairs(candidates, corpus, syn, config.heuristic)
    write_verdicts(verdicts, emit("verdicts.jsonl"))
    positives = sorted(v.pair for v in verdicts if v.heuristic_positive)

    heuristic_clusters = cluster_from_edges(corpus, set(positives))
    write_clusters(heuristic_clusters, emit("clusters_heuristic.jsonl"))
    write_conll(corpus.gold, emit("key.conll"))
    write_conll(heuristic_clusters, emit("response_heuristic.conll"))
    heuristic_report = evaluate_assignments(corpus.gold, heuristic_clusters)
    write_metrics(heuristic_report, emit("metrics_heuristic.json"))

    split_categories = categorize_by_split(corpus, syn, config)
    with open(emit("categories.json"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(
            {split: result.counts.as_dict() for split, result in split_categories.items()},
            indent=2, sort_keys=True) + "\n")
    analysis.write_distributions_csv(
        analysis.distribution_report(split_categories), emit("distributions.csv"))

    bridge.export_requests(verdicts, corpus, config.context, emit("requests.jsonl"))

    discriminator_report = None
    if config.scorer is not None:
        bridge.run_scorer(config.scorer, out / "requests.jsonl", emit("scores.jsonl"))
        records = bridge.import_scores(out / "scores.jsonl", expected_pairs=positives)
        decided = bridge.decide(records)
        write_pairs(sorted(decided), emit("edges_discriminator.jsonl"))
        discriminator_clusters = cluster_from_edges(corpus, decided)
        write_clusters(discriminator_clusters, emit("clusters_discriminator.jsonl"))
        write_conll(discriminator_clusters, emit("response_discriminator.conll"))
        discriminator_report = evaluate_assignments(corpus.gold, discriminator_clusters)
        write_metrics(discriminator_report, emit("metrics_discriminator.json"))
        final_clusters, final_edges = discriminator_clusters, sorted(decided)
    else:
        final_clusters, final_edges = heuristic_clusters, positives

    analysis.write_purity_csv(
        analysis.purity_ranking(final_clusters, corpus.gold), emit("purity.csv"))
    analysis.write_errors_jsonl(
        analysis.error_pairs(final_clusters, corpus.gold, corpus, final_edges),
        emit("errors.jsonl"))

    summary = {
        "splits": sorted(config.splits),
        "topic_key": config.topic_key.value,
        "syn_source": config.syn_source,
        "threshold": config.heuristic.threshold,
        "overlap_measure": config.heuristic.overlap_measure.value,
        "context": config.context.value,
        "scorer": config.scorer,
        "exclude_same_sentence": config.exclude_same_sentence,
        "conll_f1_heuristic": heuristic_report.conll_f1,
        "conll_f1_discriminator":
            discriminator_report.conll_f1 if discriminator_report else None,
        "artifacts": sorted(artifacts),
    }
    with open(out / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    return RunResult(heuristic_report=heuristic_report,
                     discriminator_report=discriminator_report,
                     artifacts=sorted(artifacts) + ["summary.json"])


def export_train_pairs(
    corpus: Corpus,
    syn: SynPairSet,
    config: RunConfig,
    out_path: Path,
) -> dict[str, int]:
    """Balanced training export: every accepted pair, labeled against gold.

    Accepted coreferent pairs get label 1, accepted non-coreferent pairs
    label 0; nothing is subsampled or reweighted. Both concatenation
    orders ride along per pair, mirroring the scoring request format.
    """
    train = corpus.subset({"train"})
    if not train.mentions:
        raise DataError("corpus has no train split")
    candidates = generate_candidates(
        train, config.topic_key, syn,
        exclude_same_sentence=config.exclude_same_sentence)
    verdicts = classify_pairs(candidates, train, syn, config.heuristic)
    positives = sorted(v.pair for v in verdicts if v.heuristic_positive)

    counts = {"positive": 0, "negative": 0}
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        for a, b in positives:
            label = 1 if train.gold[a] == train.gold[b] else 0
            counts["positive" if label else "negative"] += 1
            ma, mb = train.by_id[a], train.by_id[b]
            ctx_a = bridge.marked_context(ma, bridge.context_tokens(ma, train, config.context))
            ctx_b = bridge.marked_context(mb, bridge.context_tokens(mb, train, config.context))
            record = {
                "pair_id": bridge.pair_id_of((a, b)),
                "a": a,
                "b": b,
                "label": label,
                "context_ab": bridge.ordered_context(ctx_a, ctx_b),
                "context_ba": bridge.ordered_context(ctx_b, ctx_a),
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return counts
