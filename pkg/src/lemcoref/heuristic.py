"""The lemma heuristic: trigger-match rules gated by sentence-lemma overlap.

A pair is predicted coreferent when (a) its head lemmas match under one of
four rules (harvested synonym pair, equal lemma, or lemma contained in the
other trigger's text) and (b) the stop-filtered sentence-lemma overlap
strictly exceeds a threshold tuned on the development split.

Pairs are then placed in gold-relative categories; coreferent pairs the
heuristic rejects count as false negatives only when transitive closure
over the accepted coreferent edges of their gold cluster cannot recover
the link.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

from ._backend import kernels
from .corpus import Corpus, Mention
from .errors import EmptyGrid, InconsistentPairSet, UnknownMentionId
from .pairs import Pair, TopicKey
from .syn_pairs import SynPairSet


class Rule(enum.Enum):
    """Trigger-match rules, reported in fixed evaluation order."""

    SYN_PAIR = "syn_pair"
    EQUAL_LEMMA = "equal_lemma"
    A_CONTAINS_B = "a_contains_b"   # trigger of B contains head lemma of A
    B_CONTAINS_A = "b_contains_a"   # trigger of A contains head lemma of B


class OverlapMeasure(enum.Enum):
    JACCARD = "jaccard"
    MIN_OVERLAP = "min"

    @property
    def kernel_mode(self) -> int:
        return kernels.JACCARD if self is OverlapMeasure.JACCARD else kernels.MIN_OVERLAP


def load_default_stop_lemmas() -> frozenset[str]:
    text = resources.files("lemcoref").joinpath("data/stop_lemmas.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines()
                     if line.strip() and not line.startswith("#"))


@dataclass(frozen=True)
class HeuristicConfig:
    threshold: float = 0.0
    stop_lemmas: frozenset[str] = frozenset()
    overlap_measure: OverlapMeasure = OverlapMeasure.JACCARD

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")


@dataclass(frozen=True, slots=True)
class PairVerdict:
    pair: Pair
    heuristic_positive: bool
    overlap_score: float
    matched_rule: Optional[Rule]


def trigger_match(a: Mention, b: Mention, syn: SynPairSet) -> Optional[Rule]:
    """First satisfied trigger rule, or None.

    Positivity is a disjunction, so the fixed order only determines which
    rule gets reported. Containment is case-insensitive substring matching
    of one head lemma inside the other mention's raw trigger text.
    """
    if a.head_lemma != b.head_lemma and (a.head_lemma, b.head_lemma) in syn:
        return Rule.SYN_PAIR
    if a.head_lemma == b.head_lemma:
        return Rule.EQUAL_LEMMA
    if a.head_lemma in b.trigger_text.lower():
        return Rule.A_CONTAINS_B
    if b.head_lemma in a.trigger_text.lower():
        return Rule.B_CONTAINS_A
    return None


def _lemma_set(m: Mention, stop_lemmas: frozenset[str]) -> frozenset[str]:
    return frozenset(m.sentence_lemmas) - stop_lemmas


def sentence_overlap(a: Mention, b: Mention, cfg: HeuristicConfig) -> float:
    """Overlap of the two stop-filtered sentence-lemma sets, in [0, 1]."""
    sa = _lemma_set(a, cfg.stop_lemmas)
    sb = _lemma_set(b, cfg.stop_lemmas)
    inter = len(sa & sb)
    if cfg.overlap_measure is OverlapMeasure.MIN_OVERLAP:
        denom = min(len(sa), len(sb))
    else:
        denom = len(sa) + len(sb) - inter
    return inter / denom if denom else 0.0


class OverlapIndex:
    """Interned sentence-lemma sets in CSR form for the batched kernel."""

    def __init__(self, corpus: Corpus, stop_lemmas: frozenset[str]):
        intern: dict[str, int] = {}
        offsets = [0]
        flat: list[int] = []
        self.row_of: dict[str, int] = {}
        for m in corpus.mentions:
            self.row_of[m.mention_id] = len(offsets) - 1
            ids = sorted(intern.setdefault(tok, len(intern))
                         for tok in _lemma_set(m, stop_lemmas))
            flat.extend(ids)
            offsets.append(len(flat))
        self.offsets = np.asarray(offsets, dtype=np.int32)
        self.ids = np.asarray(flat, dtype=np.int32)

    def scores(self, pair_list: Sequence[Pair], measure: OverlapMeasure) -> np.ndarray:
        try:
            a_rows = np.fromiter((self.row_of[a] for a, _ in pair_list),
                                 dtype=np.int32, count=len(pair_list))
            b_rows = np.fromiter((self.row_of[b] for _, b in pair_list),
                                 dtype=np.int32, count=len(pair_list))
        except KeyError as exc:
            raise UnknownMentionId(f"mention id {exc.args[0]!r} not in corpus") from exc
        return kernels.overlap_scores(self.offsets, self.ids, a_rows, b_rows,
                                      measure.kernel_mode)


def classify_pairs(
    pair_list: Sequence[Pair],
    corpus: Corpus,
    syn: SynPairSet,
    cfg: HeuristicConfig,
    index: Optional[OverlapIndex] = None,
) -> list[PairVerdict]:
    """Verdict per pair: positive iff a rule matches and overlap > threshold."""
    if index is None:
        index = OverlapIndex(corpus, cfg.stop_lemmas)
    overlaps = index.scores(pair_list, cfg.overlap_measure)
    verdicts: list[PairVerdict] = []
    for pair, overlap in zip(pair_list, overlaps.tolist()):
        a, b = pair
        ma = corpus.by_id.get(a)
        mb = corpus.by_id.get(b)
        if ma is None or mb is None:
            raise UnknownMentionId(f"mention id {(a if ma is None else b)!r} not in corpus")
        rule = trigger_match(ma, mb, syn)
        verdicts.append(PairVerdict(
            pair=pair,
            heuristic_positive=rule is not None and overlap > cfg.threshold,
            overlap_score=overlap,
            matched_rule=rule,
        ))
    return verdicts


class PairCategory(enum.Enum):
    """Gold-relative outcome of a heuristic verdict.

    RECOVERED marks gold-coreferent rejections whose link transitive
    closure restores; they are excluded from the false-negative count.
    """

    P_EASY = "p_easy"
    P_HARD = "p_hard"
    P_FALSE_NEG = "p_fn"
    P_TRUE_NEG = "p_tn"
    P_RECOVERED = "p_recovered"


@dataclass
class CategoryCounts:
    p_easy: int = 0
    p_hard: int = 0
    p_fn: int = 0
    p_tn: int = 0
    p_recovered: int = 0

    @property
    def total(self) -> int:
        return self.p_easy + self.p_hard + self.p_fn + self.p_tn + self.p_recovered

    def as_dict(self) -> dict[str, int]:
        return {"p_easy": self.p_easy, "p_hard": self.p_hard, "p_fn": self.p_fn,
                "p_tn": self.p_tn, "p_recovered": self.p_recovered}


@dataclass
class CategoryResult:
    categories: dict[Pair, PairCategory]
    counts: CategoryCounts


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def categorize_pairs(
    verdicts: Sequence[PairVerdict],
    gold: dict[str, str],
) -> CategoryResult:
    """Four-way categorization with closure-aware false negatives.

    The verdict set must cover every within-cluster pair of each gold
    cluster it touches; a cluster whose pairs are split across groups
    cannot be categorized coherently.
    """
    verdict_of: dict[Pair, PairVerdict] = {}
    universe: set[str] = set()
    for v in verdicts:
        verdict_of[v.pair] = v
        universe.update(v.pair)
    for mid in universe:
        if mid not in gold:
            raise UnknownMentionId(f"mention id {mid!r} has no gold label")

    members: dict[str, list[str]] = defaultdict(list)
    for mid in sorted(universe):
        members[gold[mid]].append(mid)

    # closure over accepted coreferent edges, per gold cluster
    recoverable: dict[str, _UnionFind] = {}
    for cluster_id, ms in members.items():
        if len(ms) < 2:
            continue
        uf = _UnionFind(ms)
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                v = verdict_of.get((a, b))
                if v is None:
                    raise InconsistentPairSet(
                        f"gold cluster {cluster_id!r}: pair ({a!r}, {b!r}) missing "
                        "from the verdict set (cluster split across groups?)")
                if v.heuristic_positive:
                    uf.union(a, b)
        recoverable[cluster_id] = uf

    categories: dict[Pair, PairCategory] = {}
    counts = CategoryCounts()
    for v in verdicts:
        a, b = v.pair
        coreferent = gold[a] == gold[b]
        if v.heuristic_positive:
            cat = PairCategory.P_EASY if coreferent else PairCategory.P_HARD
        elif not coreferent:
            cat = PairCategory.P_TRUE_NEG
        else:
            uf = recoverable[gold[a]]
            if uf.find(a) == uf.find(b):
                cat = PairCategory.P_RECOVERED
            else:
                cat = PairCategory.P_FALSE_NEG
        categories[v.pair] = cat
        if cat is PairCategory.P_EASY:
            counts.p_easy += 1
        elif cat is PairCategory.P_HARD:
            counts.p_hard += 1
        elif cat is PairCategory.P_TRUE_NEG:
            counts.p_tn += 1
        elif cat is PairCategory.P_RECOVERED:
            counts.p_recovered += 1
        else:
            counts.p_fn += 1
    return CategoryResult(categories=categories, counts=counts)


class TuneObjective(enum.Enum):
    CONLL = "conll"
    MUC = "muc"
    B3 = "b3"
    CEAFE = "ceafe"
    LEA = "lea"


def tune_threshold(
    dev_corpus: Corpus,
    syn: SynPairSet,
    candidate_grid: Sequence[float],
    objective: TuneObjective = TuneObjective.CONLL,
    base_cfg: Optional[HeuristicConfig] = None,
    key: TopicKey = TopicKey.TOPIC,
    exclude_same_sentence: bool = False,
) -> float:
    """Grid argmax of the objective on the dev split; ties pick the
    smaller threshold. The objective scores the heuristic-only clustering
    (accepted pairs -> connected components) against gold."""
    from .clustering import CorefGraph, connected_components
    from .metrics import evaluate, partition_from_assignment
    from .pairs import generate_candidates

    if not candidate_grid:
        raise EmptyGrid("candidate_grid must be nonempty")
    for t in candidate_grid:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"grid thresholds must be in [0, 1], got {t}")
    base = base_cfg if base_cfg is not None else HeuristicConfig()

    candidates = generate_candidates(dev_corpus, key, syn,
                                     exclude_same_sentence=exclude_same_sentence)
    index = OverlapIndex(dev_corpus, base.stop_lemmas)
    overlaps = index.scores(candidates, base.overlap_measure)
    nodes = frozenset(m.mention_id for m in dev_corpus.mentions)
    key_partition = partition_from_assignment(dev_corpus.gold)

    best_threshold: Optional[float] = None
    best_score = -1.0
    for t in sorted(candidate_grid):
        edges = {pair for pair, ov in zip(candidates, overlaps.tolist()) if ov > t}
        assignment = connected_components(CorefGraph(nodes=nodes, edges=edges))
        report = evaluate(key_partition, partition_from_assignment(assignment))
        score = {
            TuneObjective.CONLL: report.conll_f1,
            TuneObjective.MUC: report.muc.f1,
            TuneObjective.B3: report.b3.f1,
            TuneObjective.CEAFE: report.ceaf_e.f1,
            TuneObjective.LEA: report.lea.f1,
        }[objective]
        if score > best_score:
            best_score = score
            best_threshold = t
    assert best_threshold is not None
    return best_threshold
