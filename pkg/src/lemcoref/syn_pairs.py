"""Harvesting synonymous lemma pairs from gold coreference chains.

A "synonymous" pair is any unordered pair of differing head lemmas that
co-occurs in gold-coreferent mention pairs within a topic group; the set
built from the training split alone drives the plain heuristic, while the
set built from all splits is the oracle variant.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .corpus import Corpus
from .errors import EmptySplitSelection, MalformedRecord
from .pairs import TopicKey, group_key_of


@dataclass
class SynPairSet:
    """Unordered lemma pairs with their coreferent-pair counts.

    Membership is symmetric and never includes identical-lemma pairs
    (equal lemmas are a separate trigger-match rule).
    """

    counts: dict[tuple[str, str], int]
    min_count: int = 1
    _adjacency: dict[str, frozenset[str]] | None = field(
        default=None, init=False, repr=False, compare=False)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        a, b = pair
        if a > b:
            a, b = b, a
        return (a, b) in self.counts

    def __len__(self) -> int:
        return len(self.counts)

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self.counts)

    def adjacency(self) -> dict[str, frozenset[str]]:
        """lemma -> partner lemmas; built once, used for bucket probing."""
        if self._adjacency is None:
            adj: dict[str, set[str]] = defaultdict(set)
            for a, b in self.counts:
                adj[a].add(b)
                adj[b].add(a)
            self._adjacency = {k: frozenset(v) for k, v in adj.items()}
        return self._adjacency


def extract_syn_pairs(
    corpus: Corpus,
    splits: Iterable[str],
    key: TopicKey = TopicKey.TOPIC,
    min_count: int = 1,
) -> SynPairSet:
    """Count differing-lemma pairs over gold-coreferent mention pairs.

    Counting unit is the coreferent mention pair (within the grouping key),
    not the cluster; pairs reaching ``min_count`` are kept.
    """
    splits = set(splits)
    if not splits:
        raise EmptySplitSelection("at least one split must be selected")
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")

    # cluster+group -> lemma multiset; pair counts come from multiset products
    buckets: dict[tuple[str, str], Counter] = defaultdict(Counter)
    for m in corpus.mentions:
        if m.split not in splits:
            continue
        group = group_key_of(m, key)
        buckets[(corpus.gold[m.mention_id], group)][m.head_lemma] += 1

    counts: Counter = Counter()
    for lemma_counts in buckets.values():
        lemmas = sorted(lemma_counts)
        for i, la in enumerate(lemmas):
            for lb in lemmas[i + 1:]:
                counts[(la, lb)] += lemma_counts[la] * lemma_counts[lb]

    kept = {pair: n for pair, n in counts.items() if n >= min_count}
    return SynPairSet(counts=kept, min_count=min_count)


def write_syn_pairs(syn: SynPairSet, path: str | Path) -> None:
    """TSV export: lemma_a<TAB>lemma_b<TAB>count, lexicographic order."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for a, b in sorted(syn.counts):
            fh.write(f"{a}\t{b}\t{syn.counts[(a, b)]}\n")


def read_syn_pairs(path: str | Path, min_count: int = 1) -> SynPairSet:
    counts: dict[tuple[str, str], int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise MalformedRecord(line_no, "", "expected lemma_a<TAB>lemma_b<TAB>count")
            a, b, n = parts
            if not a or not b or a == b:
                raise MalformedRecord(line_no, "lemma", "lemmas must be nonempty and differ")
            if a > b:
                a, b = b, a
            try:
                count = int(n)
            except ValueError:
                raise MalformedRecord(line_no, "count", f"not an integer: {n!r}") from None
            if (a, b) in counts:
                raise MalformedRecord(line_no, "lemma", f"duplicated pair ({a}, {b})")
            if count >= min_count:
                counts[(a, b)] = count
    return SynPairSet(counts=counts, min_count=min_count)
