"""Seeded randomized search for structured GC_n sets, with exact certification."""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .analysis import is_gc_set, usage_set
from .exact import LinearForm
from .incidence import k_node_lines, mu
from .interpolation import is_poised
from .lattices import ConstructionError, GenerationError, LabeledNodeSet, generate

TARGETS = ("mu3", "unused-n-node-line", "gm-violation")


def family_mix(target: str, n: int) -> Tuple[str, ...]:
    """Families sampled round-robin by seed for a target at degree ``n``."""
    if target == "mu3":
        if n < 4:
            raise ValueError("mu3 search is for n >= 4")
        return ("principal",)
    if n == 1:
        return ("chung-yao", "principal")
    mix = ["carnicer-gasca", "chung-yao", "principal"]
    if n == 3:
        mix = ["three-maximal-gc3"] + mix
    if n >= 3:
        mix.insert(1, "n-maximal")
    return tuple(mix)


@dataclass
class Hit:
    target: str
    n: int
    seed: int
    family: str
    candidate: LabeledNodeSet
    lines: List[LinearForm] = field(default_factory=list)
    severity: str = "info"

    def record(self) -> dict:
        return {
            "target": self.target,
            "n": self.n,
            "seed": self.seed,
            "family": self.family,
            "severity": self.severity,
            "lines": [[str(v) for v in ell.triple()] for ell in self.lines],
        }


def candidate(target: str, n: int, seed: int) -> Tuple[str, Optional[LabeledNodeSet]]:
    mix = family_mix(target, n)
    family = mix[seed % len(mix)]
    sub = seed // len(mix)
    try:
        return family, generate(family, None if family == "three-maximal-gc3" else n, sub)
    except (ConstructionError, GenerationError):
        return family, None


def certify(target: str, L: LabeledNodeSet) -> Optional[Tuple[List[LinearForm], str]]:
    """Re-run the full exact pipeline; return (witness lines, severity) on a hit."""
    X = L.node_set
    if not is_poised(X) or not is_gc_set(X):
        return None
    if target == "mu3":
        return ([], "info") if X.n >= 4 and mu(X) == 3 else None
    if target == "gm-violation":
        # any GC set without a maximal line would refute the conjecture
        return ([], "critical") if X.n >= 1 and mu(X) == 0 else None
    if target == "unused-n-node-line":
        unused = [ell for ell in k_node_lines(X, X.n) if not usage_set(X, ell)] if X.n >= 2 else []
        return (unused, "info") if unused else None
    raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")


def _attempt(args) -> Optional[Hit]:
    target, n, seed = args
    family, L = candidate(target, n, seed)
    if L is None or L.n != n:
        return None
    found = certify(target, L)
    if found is None:
        return None
    lines, severity = found
    return Hit(target, n, seed, family, L, lines, severity)


@dataclass
class SearchReport:
    target: str
    n: int
    seeds: range
    attempts: int
    hits: List[Hit]
    by_family: Dict[str, int]


def search(target: str, n: int, budget: int, seed: int = 0, workers: int = 1,
           on_hit: Optional[Callable[[Hit], None]] = None) -> SearchReport:
    """Try seeds ``seed .. seed + budget - 1``; hits are reported in seed order."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    family_mix(target, n)  # validates n for the target
    seeds = range(seed, seed + budget)
    jobs = [(target, n, s) for s in seeds]
    hits: List[Hit] = []
    mix = family_mix(target, n)
    by_family = {f: 0 for f in mix}
    for s in seeds:
        by_family[mix[s % len(mix)]] += 1
    for hit in _run(jobs, workers):
        if hit is not None:
            hits.append(hit)
            if on_hit:
                on_hit(hit)
    return SearchReport(target, n, seeds, budget, hits, by_family)


def _run(jobs: Sequence, workers: int) -> Iterator[Optional[Hit]]:
    if workers <= 1:
        for job in jobs:
            yield _attempt(job)
        return
    with multiprocessing.get_context("spawn").Pool(workers) as pool:
        yield from pool.imap(_attempt, jobs, chunksize=8)
