"""Mention-annotated corpora: loading, validation, writing, and statistics.

A corpus is a UTF-8 JSON Lines file, one event mention per line:

    {"mention_id": ..., "doc_id": ..., "topic_id": ..., "subtopic_id": ...,
     "sentence_id": ..., "trigger_text": ..., "head_lemma": ...,
     "sentence_lemmas": [...], "gold_cluster_id": ..., "split": ...}

``subtopic_id`` is optional; everything else is required. Lemmas arrive
precomputed and lowercased: this package never lemmatizes. An optional
sidecar file carries full-document token lemmas, one document per line:
``{"doc_id": ..., "token_lemmas": [...]}``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .errors import DuplicateMentionId, MalformedRecord, MissingGoldLabel

SPLITS = ("train", "dev", "test")

_REQUIRED_KEYS = (
    "mention_id",
    "doc_id",
    "topic_id",
    "sentence_id",
    "trigger_text",
    "head_lemma",
    "sentence_lemmas",
    "gold_cluster_id",
    "split",
)
_ALL_KEYS = frozenset(_REQUIRED_KEYS) | {"subtopic_id"}


@dataclass(frozen=True, slots=True)
class Mention:
    """One event trigger occurrence in a sentence."""

    mention_id: str
    doc_id: str
    topic_id: str
    subtopic_id: Optional[str]
    sentence_id: int
    trigger_text: str
    head_lemma: str
    sentence_lemmas: tuple[str, ...]
    split: str


@dataclass
class Corpus:
    """Validated mention set with gold cluster labels.

    ``gold`` maps every mention_id to its gold cluster id; ``documents``
    optionally maps doc_id to the document's full token-lemma stream.
    """

    mentions: list[Mention]
    gold: dict[str, str]
    documents: Optional[dict[str, tuple[str, ...]]] = None
    by_id: dict[str, Mention] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.by_id = {m.mention_id: m for m in self.mentions}

    def __len__(self) -> int:
        return len(self.mentions)

    def splits(self) -> set[str]:
        return {m.split for m in self.mentions}

    def subset(self, splits: Iterable[str]) -> "Corpus":
        """Corpus restricted to the given splits (documents filtered too)."""
        wanted = set(splits)
        mentions = [m for m in self.mentions if m.split in wanted]
        gold = {m.mention_id: self.gold[m.mention_id] for m in mentions}
        docs = None
        if self.documents is not None:
            used = {m.doc_id for m in mentions}
            docs = {d: t for d, t in self.documents.items() if d in used}
        return Corpus(mentions=mentions, gold=gold, documents=docs)


def _check_str(line_no: int, record: dict, key: str, allow_empty: bool = False) -> str:
    value = record[key]
    if not isinstance(value, str):
        raise MalformedRecord(line_no, key, f"expected string, got {type(value).__name__}")
    if not value and not allow_empty:
        raise MalformedRecord(line_no, key, "must be nonempty")
    return value


def _check_lower(line_no: int, key: str, value: str) -> str:
    if value != value.lower():
        raise MalformedRecord(line_no, key, f"must be lowercase: {value!r}")
    return value


def _parse_mention(line_no: int, record: dict) -> Mention:
    if not isinstance(record, dict):
        raise MalformedRecord(line_no, "", "record is not a JSON object")
    if "gold_cluster_id" not in record:
        raise MissingGoldLabel(f"line {line_no}: mention has no gold_cluster_id")
    for key in _REQUIRED_KEYS:
        if key not in record:
            raise MalformedRecord(line_no, key, "missing required key")
    unknown = set(record) - _ALL_KEYS
    if unknown:
        raise MalformedRecord(line_no, sorted(unknown)[0], "unknown key")

    sentence_id = record["sentence_id"]
    if not isinstance(sentence_id, int) or isinstance(sentence_id, bool) or sentence_id < 0:
        raise MalformedRecord(line_no, "sentence_id", "expected integer >= 0")

    lemmas = record["sentence_lemmas"]
    if not isinstance(lemmas, list) or not lemmas:
        raise MalformedRecord(line_no, "sentence_lemmas", "expected nonempty list")
    for tok in lemmas:
        if not isinstance(tok, str) or not tok:
            raise MalformedRecord(line_no, "sentence_lemmas", "tokens must be nonempty strings")
        _check_lower(line_no, "sentence_lemmas", tok)

    split = _check_str(line_no, record, "split")
    if split not in SPLITS:
        raise MalformedRecord(line_no, "split", f"must be one of {SPLITS}, got {split!r}")

    subtopic = record.get("subtopic_id")
    if subtopic is not None and (not isinstance(subtopic, str) or not subtopic):
        raise MalformedRecord(line_no, "subtopic_id", "expected nonempty string or omitted")

    return Mention(
        mention_id=_check_str(line_no, record, "mention_id"),
        doc_id=_check_str(line_no, record, "doc_id"),
        topic_id=_check_str(line_no, record, "topic_id"),
        subtopic_id=subtopic,
        sentence_id=sentence_id,
        trigger_text=_check_str(line_no, record, "trigger_text"),
        head_lemma=_check_lower(line_no, "head_lemma", _check_str(line_no, record, "head_lemma")),
        sentence_lemmas=tuple(lemmas),
        split=split,
    )


def load_corpus(
    path: str | Path,
    split_filter: Optional[Iterable[str]] = None,
    documents_path: Optional[str | Path] = None,
) -> Corpus:
    """Load and validate a JSON Lines corpus, keeping only requested splits."""
    wanted = set(split_filter) if split_filter is not None else None
    mentions: list[Mention] = []
    gold: dict[str, str] = {}
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(line_no, "", f"invalid JSON: {exc}") from exc
            mention = _parse_mention(line_no, record)
            if mention.mention_id in seen:
                raise DuplicateMentionId(
                    f"line {line_no}: duplicated mention_id {mention.mention_id!r}"
                )
            seen.add(mention.mention_id)
            if wanted is not None and mention.split not in wanted:
                continue
            label = record["gold_cluster_id"]
            if not isinstance(label, str) or not label:
                raise MissingGoldLabel(f"line {line_no}: gold_cluster_id must be a nonempty string")
            mentions.append(mention)
            gold[mention.mention_id] = label

    documents = load_documents(documents_path) if documents_path is not None else None
    if documents is not None:
        for m in mentions:
            if m.doc_id not in documents:
                raise MalformedRecord(0, "doc_id", f"mention {m.mention_id!r} references "
                                                   f"unknown document {m.doc_id!r}")
    return Corpus(mentions=mentions, gold=gold, documents=documents)


def load_documents(path: str | Path) -> dict[str, tuple[str, ...]]:
    documents: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(line_no, "", f"invalid JSON: {exc}") from exc
            if not isinstance(record, dict) or "doc_id" not in record or "token_lemmas" not in record:
                raise MalformedRecord(line_no, "doc_id", "expected {doc_id, token_lemmas}")
            doc_id = record["doc_id"]
            tokens = record["token_lemmas"]
            if not isinstance(doc_id, str) or not doc_id:
                raise MalformedRecord(line_no, "doc_id", "must be nonempty string")
            if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
                raise MalformedRecord(line_no, "token_lemmas", "expected list of strings")
            if doc_id in documents:
                raise MalformedRecord(line_no, "doc_id", f"duplicated document {doc_id!r}")
            documents[doc_id] = tuple(tokens)
    return documents


def write_corpus(
    corpus: Corpus,
    path: str | Path,
    documents_path: Optional[str | Path] = None,
) -> None:
    """Inverse of load_corpus; preserves mention order byte-deterministically."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for m in corpus.mentions:
            record = {
                "mention_id": m.mention_id,
                "doc_id": m.doc_id,
                "topic_id": m.topic_id,
            }
            if m.subtopic_id is not None:
                record["subtopic_id"] = m.subtopic_id
            record.update(
                sentence_id=m.sentence_id,
                trigger_text=m.trigger_text,
                head_lemma=m.head_lemma,
                sentence_lemmas=list(m.sentence_lemmas),
                gold_cluster_id=corpus.gold[m.mention_id],
                split=m.split,
            )
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    if documents_path is not None and corpus.documents is not None:
        with open(documents_path, "w", encoding="utf-8", newline="\n") as fh:
            for doc_id in sorted(corpus.documents):
                fh.write(json.dumps(
                    {"doc_id": doc_id, "token_lemmas": list(corpus.documents[doc_id])},
                    ensure_ascii=False) + "\n")


@dataclass(frozen=True, slots=True)
class SplitStats:
    documents: int
    mentions: int
    clusters: int
    singletons: int
    topics: int
    subtopics: int

    def as_dict(self) -> dict[str, int]:
        return {
            "documents": self.documents,
            "mentions": self.mentions,
            "clusters": self.clusters,
            "singletons": self.singletons,
            "topics": self.topics,
            "subtopics": self.subtopics,
        }


def stats(corpus: Corpus) -> dict[str, SplitStats]:
    """Per-split corpus statistics; a singleton is a gold cluster of size 1."""
    per_split: dict[str, list[Mention]] = defaultdict(list)
    for m in corpus.mentions:
        per_split[m.split].append(m)
    out: dict[str, SplitStats] = {}
    for split in SPLITS:
        if split not in per_split:
            continue
        ms = per_split[split]
        cluster_sizes: Mapping[str, int] = defaultdict(int)
        for m in ms:
            cluster_sizes[corpus.gold[m.mention_id]] += 1
        out[split] = SplitStats(
            documents=len({m.doc_id for m in ms}),
            mentions=len(ms),
            clusters=len(cluster_sizes),
            singletons=sum(1 for n in cluster_sizes.values() if n == 1),
            topics=len({m.topic_id for m in ms}),
            subtopics=len({m.subtopic_id for m in ms if m.subtopic_id is not None}),
        )
    return out
