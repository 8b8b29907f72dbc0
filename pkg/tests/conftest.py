import random
from pathlib import Path

import pytest

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__ == "test_acceptance":
        if report.when == "call":
            status = "PASS" if report.passed else "FAIL"
            _ACCEPTANCE_RESULTS.append((status, item.name))
        elif report.when == "setup" and report.skipped:
            _ACCEPTANCE_RESULTS.append(("SKIP", item.name))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for status, name in _ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"[{status}] {name}")

from lemcoref.corpus import Corpus, Mention
from lemcoref.heuristic import HeuristicConfig

REPO_ROOT = Path(__file__).resolve().parents[1]
MINI_CORPUS = REPO_ROOT / "data" / "mini" / "corpus.jsonl"
MINI_DOCUMENTS = REPO_ROOT / "data" / "mini" / "documents.jsonl"


def make_mention(
    mention_id: str,
    head_lemma: str = "shoot",
    trigger_text: str | None = None,
    sentence_lemmas: tuple[str, ...] = ("man", "shoot", "home"),
    topic_id: str = "t1",
    subtopic_id: str | None = "t1_s0",
    doc_id: str = "t1_d0",
    sentence_id: int = 0,
    split: str = "test",
) -> Mention:
    return Mention(
        mention_id=mention_id,
        doc_id=doc_id,
        topic_id=topic_id,
        subtopic_id=subtopic_id,
        sentence_id=sentence_id,
        trigger_text=trigger_text if trigger_text is not None else head_lemma,
        head_lemma=head_lemma,
        sentence_lemmas=sentence_lemmas,
        split=split,
    )


def make_corpus(mentions, gold=None, documents=None) -> Corpus:
    if gold is None:
        gold = {m.mention_id: f"g_{m.mention_id}" for m in mentions}
    return Corpus(mentions=list(mentions), gold=dict(gold), documents=documents)


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def plain_cfg():
    return HeuristicConfig(threshold=0.0, stop_lemmas=frozenset())


@pytest.fixture
def mini_corpus_path():
    return MINI_CORPUS
