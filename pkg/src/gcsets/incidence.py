"""Incidence between nodes and the lines they span; maximal-line structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Tuple

from .exact import LinearForm, Point, line_through
from .interpolation import NodeSet


@dataclass(frozen=True)
class IncidenceIndex:
    """Every line through at least two nodes, with node indices on each line."""

    lines: Tuple[LinearForm, ...]
    line_nodes: Dict[LinearForm, Tuple[int, ...]] = field(compare=False)
    node_lines: Tuple[Tuple[LinearForm, ...], ...] = field(compare=False)

    def count(self, ell: LinearForm) -> int:
        return len(self.line_nodes.get(ell, ()))


@lru_cache(maxsize=4096)
def build_index(X: NodeSet) -> IncidenceIndex:
    line_nodes: Dict[LinearForm, List[int]] = {}
    nodes = X.nodes
    for i, j in combinations(range(len(nodes)), 2):
        ell = line_through(nodes[i], nodes[j])
        if ell in line_nodes:
            continue
        line_nodes[ell] = [k for k, p in enumerate(nodes) if ell.contains(p)]
    lines = tuple(sorted(line_nodes))
    per_node: List[List[LinearForm]] = [[] for _ in nodes]
    for ell in lines:
        for k in line_nodes[ell]:
            per_node[k].append(ell)
    return IncidenceIndex(
        lines,
        {ell: tuple(line_nodes[ell]) for ell in lines},
        tuple(tuple(ls) for ls in per_node),
    )


def nodes_on(X: NodeSet, ell: LinearForm) -> List[Point]:
    return [p for p in X.nodes if ell.contains(p)]


def k_node_lines(X: NodeSet, k: int) -> List[LinearForm]:
    if k < 2:
        raise ValueError("k-node lines are only enumerated for k >= 2")
    idx = build_index(X)
    return [ell for ell in idx.lines if len(idx.line_nodes[ell]) == k]


def maximal_lines(X: NodeSet) -> List[LinearForm]:
    """Lines through ``n + 1`` nodes (only meaningful for ``n >= 1``)."""
    if X.n < 1:
        return []
    return k_node_lines(X, X.n + 1)


def mu(X: NodeSet) -> int:
    return len(maximal_lines(X))


def concurrent(l1: LinearForm, l2: LinearForm, l3: LinearForm) -> bool:
    if l1.is_parallel(l2) or l1.is_parallel(l3) or l2.is_parallel(l3):
        return False
    det = (
        l1.a * (l2.b * l3.c - l3.b * l2.c)
        - l1.b * (l2.a * l3.c - l3.a * l2.c)
        + l1.c * (l2.a * l3.b - l3.a * l2.b)
    )
    return det == 0


def general_position(lines) -> bool:
    lines = list(lines)
    if len(set(lines)) != len(lines):
        return False
    if any(a.is_parallel(b) for a, b in combinations(lines, 2)):
        return False
    return not any(concurrent(a, b, c) for a, b, c in combinations(lines, 3))


@dataclass
class MaximalStructure:
    mu: int
    lines: List[LinearForm]
    non_node_meets: List[Tuple[LinearForm, LinearForm]]
    concurrent_triples: List[Tuple[LinearForm, LinearForm, LinearForm]]
    too_many: bool

    @property
    def ok(self) -> bool:
        return not (self.non_node_meets or self.concurrent_triples or self.too_many)


def check_maximal_structure(X: NodeSet) -> MaximalStructure:
    """Pairwise meets at nodes, no three concurrent, and at most ``n + 2`` maximal lines."""
    ms = maximal_lines(X)
    bad_meets = []
    for a, b in combinations(ms, 2):
        if a.is_parallel(b) or a.intersect(b) not in X:
            bad_meets.append((a, b))
    triples = [t for t in combinations(ms, 3) if concurrent(*t)]
    return MaximalStructure(len(ms), ms, bad_meets, triples, len(ms) > X.n + 2)
