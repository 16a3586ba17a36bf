"""Vandermonde matrices, poisedness, independence and fundamental polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .exact import BivarPolynomial, Point, dim_pi, line_through, monomials
from .linalg import RationalMatrix, inverse, nullspace, rank, row_echelon


class DomainError(ValueError):
    """An operation was called outside its domain (e.g. a point not in the set)."""


class PoisednessError(ValueError):
    """The node set is not poised at its declared degree."""


@dataclass(frozen=True)
class NodeSet:
    """Ordered set of distinct nodes together with the degree ``n`` it is studied at."""

    n: int
    nodes: Tuple[Point, ...]

    def __post_init__(self):
        nodes = tuple(p if isinstance(p, Point) else Point(*p) for p in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if self.n < -2:
            raise ValueError("degree must be >= -2")
        seen = set()
        for p in nodes:
            if p in seen:
                raise DomainError(f"duplicate node {p}")
            seen.add(p)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.n, self.nodes))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __contains__(self, pt):
        return pt in self._positions

    @property
    def _positions(self) -> Dict[Point, int]:
        cache = self.__dict__.get("_pos")
        if cache is None:
            cache = {p: i for i, p in enumerate(self.nodes)}
            object.__setattr__(self, "_pos", cache)
        return cache

    def index(self, pt: Point) -> int:
        try:
            return self._positions[pt]
        except KeyError:
            raise DomainError(f"{pt} is not a node of the set") from None

    def subset(self, points, n: int | None = None) -> "NodeSet":
        keep = set(points)
        return NodeSet(self.n if n is None else n, tuple(p for p in self.nodes if p in keep))

    def without(self, points, n: int | None = None) -> "NodeSet":
        drop = set(points)
        return NodeSet(self.n if n is None else n, tuple(p for p in self.nodes if p not in drop))


def vandermonde(X: NodeSet, m: int | None = None) -> RationalMatrix:
    """Rows per node, columns per monomial of degree <= m (default ``X.n``), graded lex."""
    deg = X.n if m is None else m
    mons = monomials(deg) if deg >= 0 else ()
    rows = []
    for p in X.nodes:
        xp = [Fraction(1)]
        yp = [Fraction(1)]
        for _ in range(max(deg, 0)):
            xp.append(xp[-1] * p.x)
            yp.append(yp[-1] * p.y)
        rows.append(tuple(xp[i] * yp[j] for i, j in mons))
    return RationalMatrix(tuple(rows), len(mons))


@lru_cache(maxsize=8192)
def is_poised(X: NodeSet) -> bool:
    if X.n < 0:
        return False
    if len(X) != dim_pi(X.n):
        return False
    return rank(vandermonde(X)) == len(X)


def is_independent(X: NodeSet, m: int) -> bool:
    """True when every node of ``X`` has a fundamental polynomial of degree ``m``."""
    if len(X) == 0:
        return True
    if m < 0 or len(X) > dim_pi(m):
        return False
    return rank(vandermonde(X, m)) == len(X)


@lru_cache(maxsize=4096)
def _fundamental_table(X: NodeSet) -> Tuple[BivarPolynomial, ...]:
    inv = inverse(vandermonde(X)) if len(X) == dim_pi(X.n) else None
    if inv is None:
        raise PoisednessError(f"node set with {len(X)} nodes is not {X.n}-poised")
    # column k of V^{-1} holds the coefficients of the k-th fundamental polynomial
    return tuple(
        BivarPolynomial(X.n, tuple(inv.entries[r][k] for r in range(inv.rows)))
        for k in range(len(X))
    )


def fundamental_polynomials(X: NodeSet) -> Tuple[BivarPolynomial, ...]:
    """All fundamental polynomials, in node order (one elimination for the whole set)."""
    if X.n < 0:
        raise PoisednessError("negative degree")
    return _fundamental_table(X)


def fundamental_polynomial(X: NodeSet, A: Point) -> BivarPolynomial:
    k = X.index(A)
    return fundamental_polynomials(X)[k]


def interpolate(X: NodeSet, values: Sequence) -> BivarPolynomial:
    if len(values) != len(X):
        raise DomainError(f"{len(values)} values given for {len(X)} nodes")
    table = fundamental_polynomials(X)
    out = BivarPolynomial.zero(X.n)
    for c, p in zip(values, table):
        c = Fraction(c)
        if c:
            out = out + p.scale(c)
    return out


def has_fundamental_polynomial(X: NodeSet, A: Point, m: int) -> bool:
    """Whether some ``p`` of degree <= m is 1 at ``A`` and 0 on the rest of ``X``."""
    k = X.index(A)
    if m < 0:
        return False
    V = vandermonde(X, m)
    aug = [list(row) + [Fraction(int(i == k))] for i, row in enumerate(V.entries)]
    pivots = row_echelon(aug)
    return not (pivots and pivots[-1] == V.cols)


def dependence_profile(X: NodeSet, m: int) -> Tuple[bool, List[Point]]:
    """``(dependent, nodes with an m-fundamental polynomial)`` from one elimination.

    A node has such a polynomial iff every left-kernel vector of the Vandermonde
    matrix vanishes at its row.
    """
    if len(X) == 0:
        return False, []
    if m < 0:
        return True, []
    V = vandermonde(X, m)
    cols = [[V.entries[i][j] for i in range(len(X))] for j in range(V.cols)]
    kernel = nullspace(RationalMatrix(tuple(tuple(c) for c in cols), len(X)))
    free = [A for k, A in enumerate(X.nodes) if all(v[k] == 0 for v in kernel)]
    return bool(kernel), free


def egh_witness(X: NodeSet, m: int) -> List[Point]:
    """``m + 2`` collinear nodes of ``X`` if any exist, else an empty list.

    For ``|X| <= 2m + 1`` this certifies ``m``-dependence exactly.
    """
    if len(X) > 2 * m + 1:
        raise DomainError(f"collinearity criterion needs |X| <= 2m+1 = {2 * m + 1}, got {len(X)}")
    need = m + 2
    if len(X) < need:
        return []
    lines = {}
    for p, q in combinations(X.nodes, 2):
        ell = line_through(p, q)
        if ell not in lines:
            lines[ell] = [r for r in X.nodes if ell.contains(r)]
    for ell in sorted(lines):
        on = lines[ell]
        if len(on) >= need:
            return on[:need]
    return []
