"""Diagnostics: category distributions, cluster purity, and error listings."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .clustering import ClusterAssignment
from .corpus import Corpus
from .heuristic import CategoryCounts, CategoryResult
from .pairs import Pair, canonical


@dataclass(frozen=True, slots=True)
class SplitDistribution:
    counts: CategoryCounts
    fractions: dict[str, float]
    coreferent_ratio: float


DistributionReport = dict[str, SplitDistribution]


def distribution_report(split_categories: Mapping[str, CategoryResult]) -> DistributionReport:
    """Category counts and fractions per split, plus the coreferent ratio
    over all generated pairs (gold positives = easy + recovered + fn)."""
    report: DistributionReport = {}
    for split, result in split_categories.items():
        counts = result.counts
        total = counts.total
        fractions = {name: (value / total if total else 0.0)
                     for name, value in counts.as_dict().items()}
        coreferent = counts.p_easy + counts.p_recovered + counts.p_fn
        report[split] = SplitDistribution(
            counts=counts,
            fractions=fractions,
            coreferent_ratio=coreferent / total if total else 0.0,
        )
    return report


def write_distributions_csv(report: DistributionReport, path: str | Path) -> None:
    names = ["p_easy", "p_hard", "p_fn", "p_tn", "p_recovered"]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["split", "pairs", *names,
                         *[f"frac_{n}" for n in names], "coreferent_ratio"])
        for split in sorted(report):
            dist = report[split]
            counts = dist.counts.as_dict()
            writer.writerow([
                split,
                dist.counts.total,
                *[counts[n] for n in names],
                *[repr(dist.fractions[n]) for n in names],
                repr(dist.coreferent_ratio),
            ])


PurityRanking = list[tuple[str, int, int]]  # (cluster_id, impurity, size)


def purity_ranking(assignment: ClusterAssignment, gold: Mapping[str, str]) -> PurityRanking:
    """Predicted clusters ranked by impurity: the count of within-cluster
    mention pairs whose gold labels differ. Ties break on cluster id."""
    members: dict[str, list[str]] = {}
    for mention_id, cluster_id in assignment.items():
        members.setdefault(cluster_id, []).append(mention_id)
    ranking: PurityRanking = []
    for cluster_id, ms in members.items():
        labels = [gold[m] for m in ms]
        total = len(ms) * (len(ms) - 1) // 2
        same = 0
        counts: dict[str, int] = {}
        for label in labels:
            counts[label] = counts.get(label, 0) + 1
        for n in counts.values():
            same += n * (n - 1) // 2
        ranking.append((cluster_id, total - same, len(ms)))
    ranking.sort(key=lambda row: (-row[1], row[0]))
    return ranking


def write_purity_csv(ranking: PurityRanking, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["cluster_id", "impurity", "size", "impurity_fraction"])
        for cluster_id, impurity, size in ranking:
            pairs = size * (size - 1) // 2
            writer.writerow([cluster_id, impurity, size,
                             repr(impurity / pairs if pairs else 0.0)])


def error_pairs(
    assignment: ClusterAssignment,
    gold: Mapping[str, str],
    corpus: Corpus,
    decided_edges: Optional[Sequence[Pair]] = None,
) -> list[dict]:
    """Machine-readable error listing for qualitative review.

    False positives are decided edges joining gold-non-coreferent mentions;
    residual false negatives are gold-coreferent pairs left in different
    predicted clusters. Each entry carries both triggers and sentences.
    """

    def entry(kind: str, a: str, b: str) -> dict:
        ma, mb = corpus.by_id[a], corpus.by_id[b]
        return {
            "type": kind,
            "a": a,
            "b": b,
            "trigger_a": ma.trigger_text,
            "trigger_b": mb.trigger_text,
            "sentence_a": " ".join(ma.sentence_lemmas),
            "sentence_b": " ".join(mb.sentence_lemmas),
            "gold_a": gold[a],
            "gold_b": gold[b],
            "predicted_cluster": assignment[a] if assignment[a] == assignment[b] else None,
        }

    listing: list[dict] = []
    if decided_edges is not None:
        for a, b in sorted(canonical(a, b) for a, b in decided_edges):
            if gold[a] != gold[b]:
                listing.append(entry("false_positive", a, b))

    clusters: dict[str, list[str]] = {}
    for mention_id in sorted(assignment):
        clusters.setdefault(gold[mention_id], []).append(mention_id)
    for ms in clusters.values():
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if assignment[a] != assignment[b]:
                    listing.append(entry("false_negative", a, b))
    return listing


def write_errors_jsonl(listing: Sequence[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in listing:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
