"""Coreference evaluation: MUC, B-cubed, CEAF-e, LEA, and their CoNLL mean.

All metrics take a key (gold) and a response (predicted) partition of the
same mention universe. Conventions follow the published reference scorer:
empty denominators yield 0 rather than NaN, and a singleton entity's
self-link counts as resolved only when its mention is also a singleton on
the opposite side.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import UniverseMismatch

Partition = list[frozenset[str]]


def partition_from_assignment(assignment: Mapping[str, str]) -> Partition:
    clusters: dict[str, set[str]] = defaultdict(set)
    for mention_id, cluster_id in assignment.items():
        clusters[cluster_id].add(mention_id)
    # order by smallest member for stable iteration
    return [frozenset(c) for c in sorted(clusters.values(), key=min)]


def _universe(partition: Partition, name: str) -> frozenset[str]:
    seen: set[str] = set()
    for cluster in partition:
        if not cluster:
            raise ValueError(f"{name} partition contains an empty cluster")
        if seen & cluster:
            raise ValueError(f"{name} partition clusters are not disjoint")
        seen |= cluster
    return frozenset(seen)


def _check_universes(key: Partition, response: Partition) -> None:
    ku = _universe(key, "key")
    ru = _universe(response, "response")
    if ku != ru:
        missing = sorted(ku - ru)[:3]
        extra = sorted(ru - ku)[:3]
        raise UniverseMismatch(
            f"partitions cover different mentions (missing from response: {missing}, "
            f"unexpected in response: {extra})")


def _assignment_of(partition: Partition) -> dict[str, int]:
    out: dict[str, int] = {}
    for idx, cluster in enumerate(partition):
        for m in cluster:
            out[m] = idx
    return out


def _f1(recall: float, precision: float) -> float:
    if recall + precision == 0.0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True, slots=True)
class Prf:
    recall: float
    precision: float
    f1: float

    def as_dict(self) -> dict[str, float]:
        return {"recall": self.recall, "precision": self.precision, "f1": self.f1}


def _prf(r_num: float, r_den: float, p_num: float, p_den: float) -> Prf:
    recall = r_num / r_den if r_den > 0 else 0.0
    precision = p_num / p_den if p_den > 0 else 0.0
    return Prf(recall, precision, _f1(recall, precision))


def _muc_half(entities: Partition, opposite: dict[str, int]) -> tuple[int, int]:
    num = den = 0
    for cluster in entities:
        parts = len({opposite[m] for m in cluster})
        num += len(cluster) - parts
        den += len(cluster) - 1
    return num, den


def muc(key: Partition, response: Partition) -> Prf:
    """Link-based metric: spanning links found vs. spanning links needed."""
    _check_universes(key, response)
    r_num, r_den = _muc_half(key, _assignment_of(response))
    p_num, p_den = _muc_half(response, _assignment_of(key))
    return _prf(r_num, r_den, p_num, p_den)


def _b3_half(entities: Partition, opposite: Partition) -> tuple[float, int]:
    membership = {m: cluster for cluster in opposite for m in cluster}
    num = 0.0
    count = 0
    for cluster in entities:
        for m in sorted(cluster):
            num += len(cluster & membership[m]) / len(cluster)
            count += 1
    return num, count


def b_cubed(key: Partition, response: Partition) -> Prf:
    """Mention-based metric: per-mention cluster overlap fractions."""
    _check_universes(key, response)
    r_num, r_den = _b3_half(key, response)
    p_num, p_den = _b3_half(response, key)
    return _prf(r_num, r_den, p_num, p_den)


def _phi4(a: frozenset[str], b: frozenset[str]) -> float:
    return 2 * len(a & b) / (len(a) + len(b))


def ceaf_e(key: Partition, response: Partition) -> Prf:
    """Entity-based CEAF: optimal one-to-one cluster alignment under phi4."""
    _check_universes(key, response)
    if not key and not response:
        return _prf(0.0, 0, 0.0, 0)
    sim = np.zeros((len(key), len(response)))
    for i, k in enumerate(key):
        for j, r in enumerate(response):
            sim[i, j] = _phi4(k, r)
    rows, cols = linear_sum_assignment(-sim)
    # fsum: the total is independent of assignment traversal order, which
    # keeps swapping key and response an exact recall/precision exchange
    total = math.fsum(sim[rows, cols].tolist())
    return _prf(total, len(key), total, len(response))


def _lea_half(entities: Partition, opposite: Partition) -> tuple[float, int]:
    assignment = _assignment_of(opposite)
    sizes = [len(c) for c in opposite]
    num = 0.0
    den = 0
    for cluster in entities:
        size = len(cluster)
        den += size
        if size == 1:
            # self-link: resolved only if the mention is a singleton on the
            # opposite side too (reference-scorer convention)
            m = next(iter(cluster))
            resolved = 1 if sizes[assignment[m]] == 1 else 0
            num += size * resolved
        else:
            links = size * (size - 1) // 2
            spread = Counter(assignment[m] for m in cluster)
            common = sum(n * (n - 1) // 2 for n in spread.values())
            num += size * common / links
    return num, den


def lea(key: Partition, response: Partition) -> Prf:
    """Link-based entity-aware metric with entity-size weighting."""
    _check_universes(key, response)
    r_num, r_den = _lea_half(key, response)
    p_num, p_den = _lea_half(response, key)
    return _prf(r_num, r_den, p_num, p_den)


@dataclass(frozen=True, slots=True)
class MetricReport:
    muc: Prf
    b3: Prf
    ceaf_e: Prf
    lea: Prf
    conll_f1: float

    def as_dict(self) -> dict:
        return {
            "muc": self.muc.as_dict(),
            "b3": self.b3.as_dict(),
            "ceaf_e": self.ceaf_e.as_dict(),
            "lea": self.lea.as_dict(),
            "conll_f1": self.conll_f1,
        }


def evaluate(key: Partition, response: Partition) -> MetricReport:
    """All four metrics; the CoNLL score averages MUC, B3 and CEAF-e only."""
    m = muc(key, response)
    b = b_cubed(key, response)
    c = ceaf_e(key, response)
    l = lea(key, response)
    return MetricReport(muc=m, b3=b, ceaf_e=c, lea=l,
                        conll_f1=(m.f1 + b.f1 + c.f1) / 3)


def evaluate_assignments(gold: Mapping[str, str], predicted: Mapping[str, str]) -> MetricReport:
    return evaluate(partition_from_assignment(gold), partition_from_assignment(predicted))
