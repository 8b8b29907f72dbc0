import json
import os

import pytest

from lemcoref.corpus import Corpus, load_corpus, load_documents, stats, write_corpus
from lemcoref.errors import DuplicateMentionId, MalformedRecord, MissingGoldLabel
from lemcoref.synth import synthetic_corpus

from conftest import make_corpus, make_mention


def record(mention_id="m1", **overrides):
    base = {
        "mention_id": mention_id,
        "doc_id": "d1",
        "topic_id": "t1",
        "subtopic_id": "t1_s0",
        "sentence_id": 0,
        "trigger_text": "shooting",
        "head_lemma": "shoot",
        "sentence_lemmas": ["man", "shoot", "home"],
        "gold_cluster_id": "c1",
        "split": "train",
    }
    base.update(overrides)
    return base


def write_lines(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r) + "\n")


def test_load_two_valid_mentions(tmp_path):
    path = tmp_path / "c.jsonl"
    write_lines(path, [record("m1"), record("m2", head_lemma="kill", trigger_text="kill")])
    corpus = load_corpus(path)
    assert len(corpus) == 2
    assert corpus.by_id["m2"].head_lemma == "kill"
    assert corpus.gold == {"m1": "c1", "m2": "c1"}


def test_duplicate_mention_id_rejected(tmp_path):
    path = tmp_path / "c.jsonl"
    write_lines(path, [record("m1"), record("m1")])
    with pytest.raises(DuplicateMentionId):
        load_corpus(path)


def test_missing_gold_label(tmp_path):
    path = tmp_path / "c.jsonl"
    bad = record("m1")
    del bad["gold_cluster_id"]
    write_lines(path, [bad])
    with pytest.raises(MissingGoldLabel):
        load_corpus(path)


@pytest.mark.parametrize("mutation, field", [
    ({"sentence_id": -1}, "sentence_id"),
    ({"sentence_id": "0"}, "sentence_id"),
    ({"sentence_lemmas": []}, "sentence_lemmas"),
    ({"sentence_lemmas": ["Man"]}, "sentence_lemmas"),
    ({"head_lemma": "Shoot"}, "head_lemma"),
    ({"head_lemma": ""}, "head_lemma"),
    ({"trigger_text": ""}, "trigger_text"),
    ({"split": "validation"}, "split"),
    ({"bogus_key": 1}, "bogus_key"),
])
def test_malformed_records(tmp_path, mutation, field):
    path = tmp_path / "c.jsonl"
    write_lines(path, [record("m1", **mutation)])
    with pytest.raises(MalformedRecord) as err:
        load_corpus(path)
    assert err.value.field == field
    assert err.value.line_no == 1


def test_invalid_json_reports_line(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(json.dumps(record("m1")) + "\n{nope\n", encoding="utf-8")
    with pytest.raises(MalformedRecord) as err:
        load_corpus(path)
    assert err.value.line_no == 2


def test_split_filter(tmp_path):
    path = tmp_path / "c.jsonl"
    write_lines(path, [record("m1", split="train"), record("m2", split="test")])
    corpus = load_corpus(path, split_filter={"train"})
    assert [m.mention_id for m in corpus.mentions] == ["m1"]


def test_round_trip(tmp_path):
    corpus = synthetic_corpus(seed=3)
    cpath, dpath = tmp_path / "c.jsonl", tmp_path / "d.jsonl"
    write_corpus(corpus, cpath, dpath)
    again = load_corpus(cpath, documents_path=dpath)
    assert again == corpus


def test_documents_sidecar_must_cover_mentions(tmp_path):
    cpath, dpath = tmp_path / "c.jsonl", tmp_path / "d.jsonl"
    write_lines(cpath, [record("m1")])
    dpath.write_text(json.dumps({"doc_id": "other", "token_lemmas": ["x"]}) + "\n",
                     encoding="utf-8")
    with pytest.raises(MalformedRecord):
        load_corpus(cpath, documents_path=dpath)
    assert load_documents(dpath) == {"other": ("x",)}


def test_stats_single_cluster():
    mentions = [make_mention(f"m{i}") for i in range(3)]
    corpus = make_corpus(mentions, gold={m.mention_id: "c1" for m in mentions})
    table = stats(corpus)
    assert table["test"].clusters == 1
    assert table["test"].singletons == 0
    assert table["test"].mentions == 3


def test_stats_reorder_invariant():
    corpus = synthetic_corpus(seed=5)
    reordered = Corpus(mentions=list(reversed(corpus.mentions)),
                       gold=corpus.gold, documents=corpus.documents)
    assert stats(corpus) == stats(reordered)


def test_cluster_sizes_sum_to_mentions():
    corpus = synthetic_corpus(seed=5)
    table = stats(corpus)
    for split, split_stats in table.items():
        sizes = {}
        for m in corpus.mentions:
            if m.split == split:
                sizes[corpus.gold[m.mention_id]] = sizes.get(corpus.gold[m.mention_id], 0) + 1
        assert sum(sizes.values()) == split_stats.mentions
        assert len(sizes) == split_stats.clusters


ECB_PATH = os.environ.get("LEMCOREF_ECB_CORPUS")


@pytest.mark.skipif(ECB_PATH is None,
                    reason="set LEMCOREF_ECB_CORPUS to a converted ECB+ corpus file")
def test_ecb_table_counts():
    corpus = load_corpus(ECB_PATH)
    table = {split: s.as_dict() for split, s in stats(corpus).items()}
    assert table["train"]["mentions"] == 3808
    assert table["train"]["documents"] == 594
    assert table["test"] == {"documents": 206, "mentions": 1780, "clusters": 805,
                             "singletons": 623, "topics": table["test"]["topics"],
                             "subtopics": table["test"]["subtopics"]}
