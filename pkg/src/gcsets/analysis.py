"""GC property, line usage, the sets X_l / N_l and their case classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import BivarPolynomial, LinearForm, Point, divide_by_linear, product_of_lines, vanishes_on
from .incidence import build_index, maximal_lines
from .interpolation import (
    DomainError,
    NodeSet,
    PoisednessError,
    fundamental_polynomial,
    dependence_profile,
    fundamental_polynomials,
    is_poised,
)
from .linalg import RationalMatrix, nullspace


@dataclass(frozen=True)
class Factorization:
    node: Point
    lines: Tuple[LinearForm, ...]
    scalar: Fraction

    def polynomial(self) -> BivarPolynomial:
        return product_of_lines(self.lines, self.scalar)

    @property
    def repeated(self) -> bool:
        return len(set(self.lines)) < len(self.lines)


def _require_poised(X: NodeSet):
    if not is_poised(X):
        raise PoisednessError(f"node set is not {X.n}-poised")


def candidate_lines(X: NodeSet, A: Point) -> List[LinearForm]:
    """Lines through two or more nodes other than ``A`` and missing ``A``.

    Ordered by descending node count, then canonical form, so maximal lines are
    tried first.
    """
    idx = build_index(X)
    k = X.index(A)
    cands = [ell for ell in idx.lines if k not in idx.line_nodes[ell]]
    return sorted(cands, key=lambda ell: (-idx.count(ell), ell))


def factor_into_lines(X: NodeSet, A: Point) -> Optional[Factorization]:
    """Split ``p*_A`` into linear factors by trial division, or None if it stalls."""
    if A not in X:
        raise DomainError(f"{A} is not a node of the set")
    p = fundamental_polynomial(X, A)
    if X.n == 0:
        return Factorization(A, (), p.coeff(0, 0))
    factors = []
    cands = candidate_lines(X, A)
    pos = 0
    while p.degree_bound > 0:
        while pos < len(cands):
            q, exact = divide_by_linear(p, cands[pos])
            if exact:
                factors.append(cands[pos])
                p = q
                break  # same line is retried next, in case it divides again
            pos += 1
        else:
            return None
    fac = Factorization(A, tuple(factors), p.coeff(0, 0))
    if fac.scalar == 0 or fac.polynomial() != fundamental_polynomial(X, A):
        return None
    return fac


@dataclass
class GCResult:
    is_gc: bool
    factorizations: Dict[Point, Optional[Factorization]]

    def __bool__(self):
        return self.is_gc

    @property
    def failing_nodes(self) -> List[Point]:
        return [a for a, f in self.factorizations.items() if f is None]


@lru_cache(maxsize=1024)
def is_gc_set(X: NodeSet) -> GCResult:
    _require_poised(X)
    facs = {}
    for A in X.nodes:
        facs[A] = factor_into_lines(X, A)
    return GCResult(all(f is not None for f in facs.values()), facs)


def is_gc_at_degree(X: NodeSet) -> bool:
    """Poised and GC, with the conventions that degree < 0 means the empty set."""
    if X.n < 0:
        return len(X) == 0
    return is_poised(X) and is_gc_set(X).is_gc


def uses_line(X: NodeSet, A: Point, ell: LinearForm) -> bool:
    if A not in X:
        raise DomainError(f"{A} is not a node of the set")
    _require_poised(X)
    return _uses(X, X.index(A), ell)


@lru_cache(maxsize=200_000)
def _uses(X: NodeSet, k: int, ell: LinearForm) -> bool:
    if X.n < 1 or ell.contains(X.nodes[k]):
        return False
    # a degree-n polynomial vanishing at n + 1 points of a line is divisible by it
    if build_index(X).count(ell) >= X.n + 1:
        return True
    return vanishes_on(fundamental_polynomials(X)[k], ell)


def usage_set(X: NodeSet, ell: LinearForm) -> List[Point]:
    _require_poised(X)
    return [A for k, A in enumerate(X.nodes) if _uses(X, k, ell)]


def non_usage_set(X: NodeSet, ell: LinearForm) -> List[Point]:
    _require_poised(X)
    return [A for k, A in enumerate(X.nodes) if not ell.contains(A) and not _uses(X, k, ell)]


class Case(enum.Enum):
    CASE_I = "I"
    CASE_II = "II"
    CASE_NONE = "none"


@dataclass
class UsageReport:
    line: LinearForm
    node_count_on_line: int
    usage_set: List[Point]
    non_usage_set: List[Point]
    case: Case
    case_i_witnesses: List[LinearForm] = field(default_factory=list)
    case_ii_witnesses: List[Tuple[LinearForm, LinearForm]] = field(default_factory=list)

    @property
    def witness(self):
        if self.case is Case.CASE_I:
            return self.case_i_witnesses[0]
        if self.case is Case.CASE_II:
            return self.case_ii_witnesses[0]
        return None


def case_witnesses(X: NodeSet, ell: LinearForm):
    """Maximal lines missing ``ell`` within X, and maximal pairs meeting on ``ell`` at a node."""
    ms = [m for m in maximal_lines(X) if m != ell]
    on_ell = {p for p in X.nodes if ell.contains(p)}
    case_i = [m for m in ms if not any(m.contains(p) for p in on_ell)]
    case_ii = []
    for m1, m2 in combinations(ms, 2):
        if m1.is_parallel(m2):
            continue
        meet = m1.intersect(m2)
        if meet in on_ell:
            case_ii.append((m1, m2))
    return case_i, case_ii


def usage_report(X: NodeSet, ell: LinearForm) -> UsageReport:
    _require_poised(X)
    on = sum(1 for p in X.nodes if ell.contains(p))
    case_i, case_ii = case_witnesses(X, ell)
    if case_i:
        case = Case.CASE_I
    elif case_ii:
        case = Case.CASE_II
    else:
        case = Case.CASE_NONE
    return UsageReport(ell, on, usage_set(X, ell), non_usage_set(X, ell), case, case_i, case_ii)


@dataclass
class NellVerdict:
    line: LinearForm
    non_usage_set: List[Point]
    dependent: bool
    nodes_with_fundamental: List[Point]

    @property
    def ok(self) -> bool:
        if not self.non_usage_set:
            return True
        return self.dependent and not self.nodes_with_fundamental


def verify_nell(X: NodeSet, ell: LinearForm) -> NellVerdict:
    """N_l must be (n-1)-dependent and no node of it may have an (n-1)-fundamental polynomial."""
    nl = non_usage_set(X, ell)
    if not nl:
        return NellVerdict(ell, nl, False, [])
    sub = NodeSet(X.n - 1, tuple(nl))
    dependent, with_fund = dependence_profile(sub, X.n - 1)
    return NellVerdict(ell, nl, dependent, with_fund)


@dataclass(frozen=True)
class Conic:
    """``c0 + c1 x + c2 y + c3 x^2 + c4 xy + c5 y^2``."""

    coeffs: Tuple[Fraction, ...]
    ambiguous: bool = field(default=False, compare=False)

    def polynomial(self) -> BivarPolynomial:
        return BivarPolynomial(2, self.coeffs)

    def __call__(self, pt: Point) -> Fraction:
        return self.polynomial()(pt)

    def proportional_to(self, p: BivarPolynomial) -> bool:
        other = p.with_bound(2).coeffs
        mine = self.coeffs
        k = next((i for i, c in enumerate(mine) if c), None)
        if k is None or other[k] == 0:
            return False
        s = other[k] / mine[k]
        return all(s * a == b for a, b in zip(mine, other))


def conic_through(points: Sequence[Point]) -> Optional[Conic]:
    rows = [(1, p.x, p.y, p.x * p.x, p.x * p.y, p.y * p.y) for p in points]
    if not rows:
        basis = nullspace(RationalMatrix.from_rows([[0] * 6], 6))
    else:
        basis = nullspace(RationalMatrix.from_rows(rows, 6))
    if not basis:
        return None
    return Conic(tuple(basis[0]), ambiguous=len(basis) > 1)


def split_conic(conic: Conic, candidates: Sequence[LinearForm]) -> Optional[Tuple[LinearForm, LinearForm]]:
    """Factor a conic as a product of two candidate-or-quotient lines, if possible."""
    p = conic.polynomial()
    for ell in candidates:
        q, exact = divide_by_linear(p, ell)
        if exact and q.total_degree() == 1:
            other = LinearForm(q.coeff(1, 0), q.coeff(0, 1), q.coeff(0, 0))
            return ell, other
    return None


def residual_set(X: NodeSet, removals: Sequence[LinearForm]) -> NodeSet:
    removals = list(removals)
    keep = [p for p in X.nodes if not any(m.contains(p) for m in removals)]
    return NodeSet(X.n - len(removals), tuple(keep))
