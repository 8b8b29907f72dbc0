"""Connected-component clustering over coreference adjacency graphs.

Cluster ids are deterministic: each cluster is labeled with its
lexicographically smallest member mention id, so identical graphs always
serialize identically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import MalformedRecord
from .pairs import Pair

ClusterAssignment = dict[str, str]


@dataclass(frozen=True)
class CorefGraph:
    nodes: frozenset[str]
    edges: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a not in self.nodes or b not in self.nodes:
                raise ValueError(f"edge ({a!r}, {b!r}) references unknown node")


class UnionFind:
    """Union-find with path compression and union by rank."""

    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


def connected_components(graph: CorefGraph) -> ClusterAssignment:
    """mention_id -> cluster id (= smallest member); isolates are singletons."""
    uf = UnionFind(graph.nodes)
    for a, b in graph.edges:
        uf.union(a, b)
    label: dict[str, str] = {}
    for node in sorted(graph.nodes):  # ascending, so the first hit is the min
        root = uf.find(node)
        label.setdefault(root, node)
    return {node: label[uf.find(node)] for node in graph.nodes}


def write_clusters(assignment: ClusterAssignment, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for mention_id in sorted(assignment):
            fh.write(json.dumps({"mention_id": mention_id,
                                 "cluster_id": assignment[mention_id]}) + "\n")


def read_clusters(path: str | Path) -> ClusterAssignment:
    out: ClusterAssignment = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                record = json.loads(line)
                out[record["mention_id"]] = record["cluster_id"]
    return out


def write_conll(assignment: ClusterAssignment, path: str | Path,
                document: str = "lemcoref") -> None:
    """CoNLL-style export for cross-checking with external scorers.

    One mention per line: ``mention_id<TAB>(cluster_index)``, wrapped in
    the usual begin/end document markers.
    """
    index: dict[str, int] = {}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"#begin document ({document});\n")
        for mention_id in sorted(assignment):
            cid = assignment[mention_id]
            number = index.setdefault(cid, len(index) + 1)
            fh.write(f"{mention_id}\t({number})\n")
        fh.write("#end document\n")


def read_conll(path: str | Path) -> ClusterAssignment:
    tagged: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not re.fullmatch(r"\((\d+)\)", parts[1]):
                raise MalformedRecord(line_no, "", f"unparseable line: {line!r}")
            mention_id, tag = parts
            tagged[mention_id] = tag
    # relabel with the smallest member per group for determinism
    smallest: dict[str, str] = {}
    for mention_id, tag in tagged.items():
        if tag not in smallest or mention_id < smallest[tag]:
            smallest[tag] = mention_id
    return {mention_id: smallest[tag] for mention_id, tag in tagged.items()}
