"""Seeded synthetic corpora.

Two generators: ``synthetic_corpus`` mimics the texture of real event
coreference data (topics, cross-document chains, synonym families,
inflected and multiword triggers, singleton-heavy cluster sizes) and backs
the bundled mini corpus; ``random_corpus`` makes small adversarial corpora
for randomized equivalence testing. Both are pure functions of their
arguments, so regeneration is reproducible.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from .corpus import Corpus, Mention, write_corpus

_FAMILIES = [
    ["die", "kill", "perish", "death"],
    ["shoot", "fire", "gun"],
    ["attack", "assault", "strike"],
    ["win", "victory", "triumph"],
    ["crash", "collide", "wreck"],
    ["arrest", "detain", "capture"],
    ["resign", "quit", "depart"],
    ["explode", "blast", "detonate"],
    ["rob", "steal", "loot"],
    ["injure", "wound", "hurt"],
    ["announce", "declare", "reveal"],
    ["flee", "escape", "run"],
]

_FILLERS = [
    "man", "woman", "police", "officer", "home", "night", "morning", "city",
    "street", "car", "report", "official", "family", "group", "year", "day",
    "people", "child", "school", "hospital", "company", "team", "game",
    "court", "judge", "area", "county", "state", "witness", "scene",
    "suspect", "victim", "weapon", "store", "bank", "party", "leader",
    "member", "crowd", "building", "north", "south", "road", "river",
]

_STOPS = ["the", "a", "an", "of", "to", "in", "and", "on", "at", "was", "be"]


def _trigger_variant(rng: random.Random, lemma: str) -> str:
    roll = rng.random()
    if roll < 0.45:
        return lemma
    if roll < 0.6:
        return lemma.capitalize()
    if roll < 0.75:
        return lemma + rng.choice(["s", "ed", "ing"])
    if roll < 0.9:
        return lemma + " " + rng.choice(["down", "out", "off"])
    return rng.choice(["deadly", "fatal", "sudden"]) + " " + lemma


def _sentence(rng: random.Random, head: str, signature: list[str],
              topic_fillers: list[str]) -> tuple[str, ...]:
    tokens = [head]
    tokens += [tok for tok in signature if rng.random() < 0.75]
    tokens += rng.sample(topic_fillers, k=rng.randint(3, 6))
    tokens += rng.choices(_STOPS, k=rng.randint(2, 4))
    rng.shuffle(tokens)
    return tuple(tokens)


def synthetic_corpus(
    seed: int = 0,
    topics_per_split: dict[str, int] | None = None,
    docs_per_topic: int = 4,
    clusters_per_topic: int = 6,
    max_cluster_size: int = 5,
    singleton_fraction: float = 0.4,
    synonym_prob: float = 0.3,
    with_documents: bool = True,
) -> Corpus:
    """An ECB-like corpus: lemma matching works well but not perfectly."""
    if topics_per_split is None:
        topics_per_split = {"train": 3, "dev": 1, "test": 2}
    rng = random.Random(seed)
    mentions: list[Mention] = []
    gold: dict[str, str] = {}
    sentences: dict[tuple[str, int], tuple[str, ...]] = {}
    counter = 0
    topic_index = 0
    for split in ("train", "dev", "test"):
        for _ in range(topics_per_split.get(split, 0)):
            topic_id = f"t{topic_index}"
            topic_index += 1
            topic_fillers = rng.sample(_FILLERS, k=14)
            docs = [f"{topic_id}_d{i}" for i in range(docs_per_topic)]
            next_sentence = {d: 0 for d in docs}
            for c in range(clusters_per_topic):
                family = rng.choice(_FAMILIES)
                cluster_id = f"{topic_id}_c{c}"
                subtopic_id = f"{topic_id}_s{c % 2}"
                signature = rng.sample(topic_fillers, k=3)
                if rng.random() < singleton_fraction:
                    size = 1
                else:
                    size = rng.randint(2, max_cluster_size)
                for _ in range(size):
                    lemma = family[0]
                    if size > 1 and rng.random() < synonym_prob:
                        lemma = rng.choice(family)
                    doc_id = rng.choice(docs)
                    sentence_id = next_sentence[doc_id]
                    next_sentence[doc_id] += 1
                    counter += 1
                    mention_id = f"m{counter:04d}"
                    sentence = _sentence(rng, lemma, signature, topic_fillers)
                    sentences[(doc_id, sentence_id)] = sentence
                    mentions.append(Mention(
                        mention_id=mention_id,
                        doc_id=doc_id,
                        topic_id=topic_id,
                        subtopic_id=subtopic_id,
                        sentence_id=sentence_id,
                        trigger_text=_trigger_variant(rng, lemma),
                        head_lemma=lemma,
                        sentence_lemmas=sentence,
                        split=split,
                    ))
                    gold[mention_id] = cluster_id

    documents = None
    if with_documents:
        documents = {}
        for (doc_id, sentence_id), sentence in sorted(sentences.items()):
            documents.setdefault(doc_id, [])
            documents[doc_id].extend(sentence)
        documents = {d: tuple(toks) for d, toks in documents.items()}
    return Corpus(mentions=mentions, gold=gold, documents=documents)


def random_corpus(
    rng: random.Random,
    n_mentions: int,
    n_topics: int = 3,
    vocab_size: int = 20,
    cluster_rate: float = 0.3,
) -> Corpus:
    """Small adversarial corpus for equivalence tests: arbitrary lemmas,
    triggers that sometimes embed other lemmas, clusters never crossing
    topic groups."""
    vocab = [f"w{i}" for i in range(vocab_size)]
    mentions: list[Mention] = []
    gold: dict[str, str] = {}
    for i in range(n_mentions):
        topic = f"topic{rng.randrange(n_topics)}"
        lemma = rng.choice(vocab)
        roll = rng.random()
        if roll < 0.5:
            trigger = lemma
        elif roll < 0.7:
            trigger = lemma + rng.choice(["s", "ed", "x"])
        elif roll < 0.85:
            trigger = rng.choice(vocab) + " " + lemma
        else:
            trigger = rng.choice(vocab)  # trigger unrelated to the head lemma
        n_clusters = max(1, int(n_mentions * cluster_rate / n_topics))
        cluster = f"{topic}_g{rng.randrange(n_clusters)}"
        sentence = tuple(rng.choices(vocab, k=rng.randint(1, 8)))
        mention_id = f"m{i:04d}"
        mentions.append(Mention(
            mention_id=mention_id,
            doc_id=f"{topic}_d{rng.randrange(4)}",
            topic_id=topic,
            subtopic_id=f"{topic}_s{rng.randrange(2)}",
            sentence_id=rng.randrange(6),
            trigger_text=trigger,
            head_lemma=lemma,
            sentence_lemmas=sentence,
            split=rng.choice(["train", "dev", "test"]),
        ))
        gold[mention_id] = cluster
    return Corpus(mentions=mentions, gold=gold)


def scaling_corpus(n_mentions: int, seed: int = 0, bucket_target: int = 5,
                   n_topics: int = 4) -> Corpus:
    """Fixed-ambiguity corpus family: the lemma vocabulary grows with the
    mention count so head-lemma buckets stay bounded in expectation."""
    rng = random.Random(seed)
    vocab_size = max(4, n_mentions // (n_topics * bucket_target))
    mentions: list[Mention] = []
    gold: dict[str, str] = {}
    for i in range(n_mentions):
        topic = f"t{rng.randrange(n_topics)}"
        lemma = f"{topic}ev{rng.randrange(vocab_size)}"
        trigger = lemma if rng.random() < 0.7 else lemma + " down"
        mention_id = f"m{i:06d}"
        mentions.append(Mention(
            mention_id=mention_id,
            doc_id=f"{topic}_d{rng.randrange(16)}",
            topic_id=topic,
            subtopic_id=None,
            sentence_id=rng.randrange(32),
            trigger_text=trigger,
            head_lemma=lemma,
            sentence_lemmas=(lemma, f"f{rng.randrange(vocab_size)}"),
            split="test",
        ))
        gold[mention_id] = f"{topic}_{lemma}"
    return Corpus(mentions=mentions, gold=gold)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="regenerate the bundled synthetic mini corpus")
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    corpus = synthetic_corpus(seed=args.seed)
    write_corpus(corpus, args.out / "corpus.jsonl", args.out / "documents.jsonl")
    print(f"{len(corpus)} mentions -> {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
