"""Mention-pair generation within topic (or sub-topic) groups.

``all_pairs`` materializes the full quadratic pair space per group.
``generate_candidates`` produces exactly the pairs whose triggers satisfy
one of the lemma-match rules, without touching non-matching cross-bucket
pairs: mentions are bucketed by head lemma, buckets are probed for equal
lemmas, harvested synonym partners, and lemma-in-trigger substring
containment (found by hashing every substring of each distinct trigger
into the group's lemma vocabulary).
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping, Optional

from .corpus import Corpus, Mention
from .errors import MissingGroupKey

if TYPE_CHECKING:
    from .syn_pairs import SynPairSet

Pair = tuple[str, str]


class TopicKey(enum.Enum):
    """Grouping field for pair generation."""

    TOPIC = "topic"
    SUBTOPIC = "subtopic"


def canonical(a: str, b: str) -> Pair:
    return (a, b) if a < b else (b, a)


def group_key_of(m: Mention, key: TopicKey) -> str:
    if key is TopicKey.TOPIC:
        return m.topic_id
    if m.subtopic_id is None:
        raise MissingGroupKey(f"mention {m.mention_id!r} has no subtopic_id")
    return m.subtopic_id


@dataclass
class BlockingStats:
    """Instrumented work counters for candidate generation."""

    groups: int = 0
    mentions: int = 0
    equal_lemma_pairs: int = 0
    syn_probes: int = 0
    syn_pairs: int = 0
    substring_probes: int = 0
    containment_pairs: int = 0

    @property
    def total_comparisons(self) -> int:
        return (self.equal_lemma_pairs + self.syn_probes + self.syn_pairs
                + self.substring_probes + self.containment_pairs)


def _group_mentions(
    corpus: Corpus,
    key: TopicKey,
    topic_override: Optional[Mapping[str, str]],
) -> dict[str, list[Mention]]:
    groups: dict[str, list[Mention]] = defaultdict(list)
    for m in corpus.mentions:
        if topic_override is not None:
            if m.mention_id not in topic_override:
                raise MissingGroupKey(
                    f"topic_override does not cover mention {m.mention_id!r}")
            group = topic_override[m.mention_id]
        else:
            group = group_key_of(m, key)
        groups[group].append(m)
    return groups


def _eligible(a: Mention, b: Mention, exclude_same_sentence: bool) -> bool:
    if not exclude_same_sentence:
        return True
    return not (a.doc_id == b.doc_id and a.sentence_id == b.sentence_id)


def all_pairs(
    corpus: Corpus,
    key: TopicKey = TopicKey.TOPIC,
    topic_override: Optional[Mapping[str, str]] = None,
    exclude_same_sentence: bool = False,
) -> list[Pair]:
    """Every unordered within-group mention pair, in sorted canonical order."""
    groups = _group_mentions(corpus, key, topic_override)
    out: list[Pair] = []
    for members in groups.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if _eligible(a, b, exclude_same_sentence):
                    out.append(canonical(a.mention_id, b.mention_id))
    out.sort()
    return out


def generate_candidates(
    corpus: Corpus,
    key: TopicKey,
    syn: "SynPairSet",
    topic_override: Optional[Mapping[str, str]] = None,
    exclude_same_sentence: bool = False,
    stats: Optional[BlockingStats] = None,
) -> list[Pair]:
    """Exactly the within-group pairs passing a trigger-match rule.

    Set-equal to filtering ``all_pairs`` through the rule check, but built
    from per-group hash buckets so non-matching cross-bucket pairs are
    never enumerated.
    """
    groups = _group_mentions(corpus, key, topic_override)
    adjacency = syn.adjacency()
    found: set[Pair] = set()
    for members in groups.values():
        if stats is not None:
            stats.groups += 1
            stats.mentions += len(members)
        lemma_bucket: dict[str, list[Mention]] = defaultdict(list)
        trigger_bucket: dict[str, list[Mention]] = defaultdict(list)
        for m in members:
            lemma_bucket[m.head_lemma].append(m)
            trigger_bucket[m.trigger_text.lower()].append(m)

        # equal head lemmas: all pairs within one bucket
        for bucket in lemma_bucket.values():
            for i, a in enumerate(bucket):
                for b in bucket[i + 1:]:
                    if stats is not None:
                        stats.equal_lemma_pairs += 1
                    if _eligible(a, b, exclude_same_sentence):
                        found.add(canonical(a.mention_id, b.mention_id))

        # harvested synonym pairs: probe each lemma's partners
        for lemma in lemma_bucket:
            for partner in adjacency.get(lemma, ()):
                if stats is not None:
                    stats.syn_probes += 1
                if partner <= lemma or partner not in lemma_bucket:
                    continue  # each unordered pair handled from its low side
                for a in lemma_bucket[lemma]:
                    for b in lemma_bucket[partner]:
                        if stats is not None:
                            stats.syn_pairs += 1
                        if _eligible(a, b, exclude_same_sentence):
                            found.add(canonical(a.mention_id, b.mention_id))

        # lemma contained in the other mention's trigger text: hash every
        # substring of each distinct trigger into the lemma vocabulary
        max_len = max(len(lemma) for lemma in lemma_bucket)
        for trigger, holders in trigger_bucket.items():
            matched: set[str] = set()
            for i in range(len(trigger)):
                hi = min(len(trigger), i + max_len)
                for j in range(i + 1, hi + 1):
                    if stats is not None:
                        stats.substring_probes += 1
                    sub = trigger[i:j]
                    if sub in lemma_bucket and sub not in matched:
                        matched.add(sub)
            for lemma in matched:
                for b in holders:
                    for a in lemma_bucket[lemma]:
                        if a.mention_id == b.mention_id:
                            continue
                        if stats is not None:
                            stats.containment_pairs += 1
                        if _eligible(a, b, exclude_same_sentence):
                            found.add(canonical(a.mention_id, b.mention_id))

    return sorted(found)


def write_pairs(pairs: Iterable[Pair], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for a, b in pairs:
            fh.write(json.dumps({"a": a, "b": b}) + "\n")


def read_pairs(path: str | Path) -> list[Pair]:
    out: list[Pair] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                record = json.loads(line)
                out.append((record["a"], record["b"]))
    return out
