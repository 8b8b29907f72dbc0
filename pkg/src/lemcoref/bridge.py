"""File exchange with an external pairwise scorer.

Heuristic-accepted pairs are exported as scoring requests carrying both
concatenation orders of the pair context (the scorer's encoding is order
sensitive); imported scores are averaged into a single symmetric score per
pair and thresholded at 0.5 to form the discriminator adjacency.

Request line:  {"pair_id", "a", "b", "context_ab": {"text", "trigger_spans"},
                "context_ba": {...}}
Score line:    {"pair_id", "score_ab", "score_ba"}

Trigger tokens inside each context are wrapped with the literal marker
tokens "<m>" and "</m>"; trigger_spans are the [start, end) character
spans of the two raw trigger token stretches within "text".
"""

from __future__ import annotations

import enum
import json
import shlex
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence
from urllib.parse import quote, unquote

from .corpus import Corpus, Mention
from .errors import (
    DuplicatePair,
    MalformedRecord,
    MissingDocumentText,
    MissingPair,
    ScoreOutOfRange,
    ScorerError,
    UnknownMentionId,
)
from .heuristic import PairVerdict
from .pairs import Pair

MARKER_OPEN = "<m>"
MARKER_CLOSE = "</m>"

DECISION_THRESHOLD = 0.5  # fixed, not tunable


class ContextMode(enum.Enum):
    SENTENCE = "sentence"
    DOCUMENT = "document"


def pair_id_of(pair: Pair) -> str:
    return quote(pair[0], safe="") + "|" + quote(pair[1], safe="")


def pair_of_id(pair_id: str) -> Pair:
    a, _, b = pair_id.partition("|")
    return (unquote(a), unquote(b))


def _locate_trigger(tokens: Sequence[str], mention: Mention) -> Optional[tuple[int, int]]:
    trigger = mention.trigger_text.lower().split()
    if trigger and len(trigger) <= len(tokens):
        for i in range(len(tokens) - len(trigger) + 1):
            if list(tokens[i:i + len(trigger)]) == trigger:
                return i, i + len(trigger)
    try:
        i = list(tokens).index(mention.head_lemma)
        return i, i + 1
    except ValueError:
        return None


def marked_context(mention: Mention, tokens: Sequence[str]) -> tuple[str, tuple[int, int]]:
    """Token stream with the trigger wrapped in markers.

    Returns the joined text and the character span of the raw trigger
    stretch. When the trigger cannot be located in the stream (lemmas vs.
    inflected trigger text), the head lemma is appended and marked there.
    """
    tokens = list(tokens)
    span = _locate_trigger(tokens, mention)
    if span is None:
        tokens.append(mention.head_lemma)
        span = (len(tokens) - 1, len(tokens))
    i, j = span
    marked = tokens[:i] + [MARKER_OPEN] + tokens[i:j] + [MARKER_CLOSE] + tokens[j:]
    start = len(" ".join(marked[:i + 1])) + 1
    trigger = " ".join(tokens[i:j])
    return " ".join(marked), (start, start + len(trigger))


def context_tokens(mention: Mention, corpus: Corpus, mode: ContextMode) -> Sequence[str]:
    if mode is ContextMode.SENTENCE:
        return mention.sentence_lemmas
    if corpus.documents is None or mention.doc_id not in corpus.documents:
        raise MissingDocumentText(
            f"document context requested but no token stream for doc {mention.doc_id!r}")
    return corpus.documents[mention.doc_id]


def ordered_context(first: tuple[str, tuple[int, int]],
                     second: tuple[str, tuple[int, int]]) -> dict:
    text_a, span_a = first
    text_b, span_b = second
    offset = len(text_a) + 1
    return {
        "text": text_a + " " + text_b,
        "trigger_spans": [list(span_a), [span_b[0] + offset, span_b[1] + offset]],
    }


def export_requests(
    verdicts: Sequence[PairVerdict],
    corpus: Corpus,
    context: ContextMode,
    out: str | Path,
) -> int:
    """One request per heuristic-positive pair, both orders; returns count."""
    positives = sorted(v.pair for v in verdicts if v.heuristic_positive)
    marked: dict[str, tuple[str, tuple[int, int]]] = {}

    def context_of(mention_id: str) -> tuple[str, tuple[int, int]]:
        if mention_id not in marked:
            mention = corpus.by_id.get(mention_id)
            if mention is None:
                raise UnknownMentionId(f"mention id {mention_id!r} not in corpus")
            marked[mention_id] = marked_context(
                mention, context_tokens(mention, corpus, context))
        return marked[mention_id]

    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        for a, b in positives:
            ctx_a = context_of(a)
            ctx_b = context_of(b)
            record = {
                "pair_id": pair_id_of((a, b)),
                "a": a,
                "b": b,
                "context_ab": ordered_context(ctx_a, ctx_b),
                "context_ba": ordered_context(ctx_b, ctx_a),
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return len(positives)


@dataclass(frozen=True, slots=True)
class ScoreRecord:
    pair: Pair
    score_ab: float
    score_ba: float

    @property
    def symmetric(self) -> float:
        return (self.score_ab + self.score_ba) / 2


def import_scores(
    path: str | Path,
    expected_pairs: Optional[Sequence[Pair]] = None,
) -> list[ScoreRecord]:
    """Parse and validate a score file; checks coverage when expected_pairs
    is given (exactly one line per exported pair)."""
    records: list[ScoreRecord] = []
    seen: set[str] = set()
    expected = {pair_id_of(p) for p in expected_pairs} if expected_pairs is not None else None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(line_no, "", f"invalid JSON: {exc}") from exc
            try:
                pair_id = record["pair_id"]
                score_ab = record["score_ab"]
                score_ba = record["score_ba"]
            except (KeyError, TypeError):
                raise MalformedRecord(line_no, "",
                                      "expected {pair_id, score_ab, score_ba}") from None
            if pair_id in seen:
                raise DuplicatePair(f"line {line_no}: duplicated pair_id {pair_id!r}")
            seen.add(pair_id)
            if expected is not None and pair_id not in expected:
                raise MissingPair(f"line {line_no}: pair_id {pair_id!r} was never exported")
            for name, value in (("score_ab", score_ab), ("score_ba", score_ba)):
                if not isinstance(value, (int, float)) or isinstance(value, bool) \
                        or not 0.0 <= float(value) <= 1.0:
                    raise ScoreOutOfRange(
                        f"line {line_no}: {name}={value!r} outside [0, 1]")
            records.append(ScoreRecord(pair=pair_of_id(pair_id),
                                       score_ab=float(score_ab),
                                       score_ba=float(score_ba)))
    if expected is not None and len(seen) < len(expected):
        missing = sorted(expected - seen)[:3]
        raise MissingPair(f"score file misses {len(expected) - len(seen)} pairs "
                          f"(e.g. {missing})")
    return records


def decide(records: Sequence[ScoreRecord]) -> set[Pair]:
    """Edges of the discriminator adjacency: symmetric score strictly > 0.5."""
    return {r.pair for r in records if r.symmetric > DECISION_THRESHOLD}


def run_scorer(command: str, request_path: str | Path, score_path: str | Path) -> None:
    """Invoke the external scorer as ``<command> <request_file> <score_file>``."""
    argv = shlex.split(command) + [str(request_path), str(score_path)]
    try:
        proc = subprocess.run(argv, capture_output=True, text=True)
    except OSError as exc:
        raise ScorerError(f"could not launch scorer {argv[0]!r}: {exc}") from exc
    if proc.returncode != 0:
        tail = (proc.stderr or proc.stdout or "").strip()[-500:]
        raise ScorerError(f"scorer exited with status {proc.returncode}: {tail}")
