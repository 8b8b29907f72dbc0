import math
import random

import pytest

from lemcoref.errors import MissingGroupKey
from lemcoref.pairs import (
    BlockingStats,
    TopicKey,
    all_pairs,
    generate_candidates,
    read_pairs,
    write_pairs,
)
from lemcoref.syn_pairs import SynPairSet, extract_syn_pairs
from lemcoref.synth import random_corpus, scaling_corpus

from conftest import make_corpus, make_mention
from oracles import brute_force_all_pairs, brute_force_candidates

NO_SYN = SynPairSet(counts={})


def test_single_topic_counts():
    corpus = make_corpus([make_mention(f"m{i}") for i in range(4)])
    assert len(all_pairs(corpus)) == math.comb(4, 2)


def test_two_topics_never_cross():
    mentions = [make_mention(f"a{i}", topic_id="t1") for i in range(3)]
    mentions += [make_mention(f"b{i}", topic_id="t2") for i in range(2)]
    corpus = make_corpus(mentions)
    pairs = all_pairs(corpus)
    assert len(pairs) == 3 + 1
    for a, b in pairs:
        assert a[0] == b[0]  # same topic prefix


def test_pairs_are_canonical_and_sorted():
    corpus = make_corpus([make_mention(m) for m in ("zz", "aa", "mm")])
    pairs = all_pairs(corpus)
    assert pairs == [("aa", "mm"), ("aa", "zz"), ("mm", "zz")]


def test_subtopic_key_requires_subtopics():
    corpus = make_corpus([make_mention("m1", subtopic_id=None), make_mention("m2")])
    with pytest.raises(MissingGroupKey):
        all_pairs(corpus, TopicKey.SUBTOPIC)


def test_topic_override_must_cover_all():
    corpus = make_corpus([make_mention("m1"), make_mention("m2")])
    with pytest.raises(MissingGroupKey):
        all_pairs(corpus, topic_override={"m1": "x"})
    grouped = all_pairs(corpus, topic_override={"m1": "x", "m2": "y"})
    assert grouped == []


def test_all_pairs_matches_enumeration_oracle():
    rng = random.Random(4242)
    for _ in range(25):
        corpus = random_corpus(rng, rng.randint(2, 80))
        for key_name, key in (("topic", TopicKey.TOPIC), ("subtopic", TopicKey.SUBTOPIC)):
            assert set(all_pairs(corpus, key)) == brute_force_all_pairs(corpus, key_name)


def test_equal_lemma_bucket_only():
    mentions = [
        make_mention("m1", head_lemma="shoot"),
        make_mention("m2", head_lemma="shoot"),
        make_mention("m3", head_lemma="kill"),
    ]
    corpus = make_corpus(mentions)
    assert generate_candidates(corpus, TopicKey.TOPIC, NO_SYN) == [("m1", "m2")]


def test_syn_pair_bucket():
    mentions = [make_mention("m1", head_lemma="shoot"),
                make_mention("m2", head_lemma="fire")]
    corpus = make_corpus(mentions)
    syn = SynPairSet(counts={("fire", "shoot"): 1})
    assert generate_candidates(corpus, TopicKey.TOPIC, syn) == [("m1", "m2")]
    assert generate_candidates(corpus, TopicKey.TOPIC, NO_SYN) == []


def test_containment_bucket():
    mentions = [make_mention("m1", head_lemma="gun", trigger_text="gun"),
                make_mention("m2", head_lemma="shoot", trigger_text="Gunned down")]
    corpus = make_corpus(mentions)
    assert generate_candidates(corpus, TopicKey.TOPIC, NO_SYN) == [("m1", "m2")]


def test_candidates_equal_brute_force_filter(rng):
    for trial in range(30):
        corpus = random_corpus(rng, rng.randint(2, 200), vocab_size=rng.randint(3, 40))
        syn = extract_syn_pairs(corpus, {"train", "dev", "test"}) \
            if trial % 2 else NO_SYN
        for key_name, key in (("topic", TopicKey.TOPIC), ("subtopic", TopicKey.SUBTOPIC)):
            expected = brute_force_candidates(corpus, syn.counts, key_name)
            got = generate_candidates(corpus, key, syn)
            assert set(got) == expected
            assert set(got) <= set(all_pairs(corpus, key))


def test_exclude_same_sentence_consistency(rng):
    for _ in range(10):
        corpus = random_corpus(rng, rng.randint(2, 120))
        syn = extract_syn_pairs(corpus, {"train", "dev", "test"})
        expected = brute_force_candidates(corpus, syn.counts, "topic",
                                          exclude_same_sentence=True)
        got = generate_candidates(corpus, TopicKey.TOPIC, syn, exclude_same_sentence=True)
        assert set(got) == expected


def test_comparison_counts_subquadratic():
    sizes = [500, 1000, 2000, 4000]
    totals = []
    for n in sizes:
        corpus = scaling_corpus(n, seed=17)
        stats = BlockingStats()
        generate_candidates(corpus, TopicKey.TOPIC, NO_SYN, stats=stats)
        totals.append(stats.total_comparisons)
    # doubling the corpus should far less than quadruple the work
    for prev, cur in zip(totals, totals[1:]):
        assert cur / prev < 3.0
    assert totals == sorted(totals)


def test_deterministic_output(rng):
    corpus = random_corpus(rng, 150)
    syn = extract_syn_pairs(corpus, {"train", "dev", "test"})
    first = generate_candidates(corpus, TopicKey.TOPIC, syn)
    second = generate_candidates(corpus, TopicKey.TOPIC, syn)
    assert first == second == sorted(first)


def test_pair_file_round_trip(tmp_path):
    pairs = [("a", "b"), ("a", "c")]
    path = tmp_path / "pairs.jsonl"
    write_pairs(pairs, path)
    assert read_pairs(path) == pairs
