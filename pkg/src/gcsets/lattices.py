"""Generators for the node-set families: Chung-Yao, Carnicer-Gasca, sets with
exactly n maximal lines, GC_3 sets with three maximal lines, the unused-line
counterexample, principal lattices, and extension by a new maximal line.

Random generation draws integer data from a box of half-width ``box`` and
retries on degeneracy at most ``MAX_ATTEMPTS`` times.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .analysis import is_gc_set
from .exact import DegenerateInputError, LinearForm, Point, collinear, line_through
from .incidence import general_position, maximal_lines, nodes_on
from .interpolation import DomainError, NodeSet, is_poised

DEFAULT_SEED = 0
DEFAULT_BOX = 9
MAX_ATTEMPTS = 500

FAMILIES = (
    "chung-yao",
    "carnicer-gasca",
    "n-maximal",
    "three-maximal-gc3",
    "counterexample",
    "principal",
)


class ConstructionError(ValueError):
    """A recipe violates a structural requirement of its family."""


class GenerationError(RuntimeError):
    """Random generation gave up after the attempt budget."""


@dataclass(frozen=True)
class LabeledNodeSet:
    node_set: NodeSet
    labels: Tuple[str, ...]
    names: Tuple[str, ...] = ()
    lines: Tuple[Tuple[str, LinearForm], ...] = ()
    provenance: Dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.node_set):
            raise ValueError("one label per node is required")
        if self.names and len(self.names) != len(self.node_set):
            raise ValueError("names, when given, must cover every node")

    @property
    def n(self) -> int:
        return self.node_set.n

    @property
    def nodes(self) -> Tuple[Point, ...]:
        return self.node_set.nodes

    def line(self, name: str) -> LinearForm:
        for key, ell in self.lines:
            if key == name:
                return ell
        raise KeyError(name)

    def with_role(self, role: str) -> List[Point]:
        return [p for p, r in zip(self.nodes, self.labels) if r == role]

    def node(self, name: str) -> Point:
        return self.nodes[self.names.index(name)]


def _certify(X: NodeSet, mu_expected: Optional[int], family: str):
    if not is_poised(X):
        raise ConstructionError(f"{family}: result is not {X.n}-poised")
    if not is_gc_set(X):
        raise ConstructionError(f"{family}: result is not a GC_{X.n} set")
    if mu_expected is not None:
        got = len(maximal_lines(X))
        if got != mu_expected:
            raise ConstructionError(f"{family}: expected {mu_expected} maximal lines, found {got}")


# ---------------------------------------------------------------- Chung-Yao

def chung_yao(lines: Sequence[LinearForm], certify: bool = True) -> LabeledNodeSet:
    lines = list(lines)
    if len(lines) < 3:
        raise ConstructionError("chung-yao: need n + 2 >= 3 lines")
    if not general_position(lines):
        raise ConstructionError("chung-yao: lines are not in general position")
    n = len(lines) - 2
    nodes, names = [], []
    for i, j in combinations(range(len(lines)), 2):
        nodes.append(lines[i].intersect(lines[j]))
        names.append(f"A{i + 1}{j + 1}" if len(lines) <= 9 else f"A{i + 1}_{j + 1}")
    X = NodeSet(n, tuple(nodes))
    if certify:
        _certify(X, n + 2, "chung-yao")
    return LabeledNodeSet(
        X,
        ("intersection",) * len(nodes),
        tuple(names),
        tuple((f"L{i + 1}", ell) for i, ell in enumerate(lines)),
        {"family": "chung-yao", "n": n},
    )


def _random_line(rng: random.Random, box: int) -> LinearForm:
    while True:
        a, b = rng.randint(-box, box), rng.randint(-box, box)
        if a or b:
            return LinearForm(a, b, rng.randint(-box * box, box * box))


def _random_general_lines(rng: random.Random, k: int, box: int) -> List[LinearForm]:
    for _ in range(MAX_ATTEMPTS):
        lines = [_random_line(rng, box) for _ in range(k)]
        if general_position(lines):
            return lines
    raise GenerationError(f"no {k} lines in general position found")


def random_chung_yao(n: int, seed: int = DEFAULT_SEED, box: int = DEFAULT_BOX) -> LabeledNodeSet:
    rng = random.Random(f"chung-yao:{n}:{seed}")
    out = chung_yao(_random_general_lines(rng, n + 2, box))
    out.provenance.update({"seed": seed, "box": box})
    return out


# ----------------------------------------------------------- Carnicer-Gasca

def carnicer_gasca(lines: Sequence[LinearForm], free: Sequence[Point], certify: bool = True) -> LabeledNodeSet:
    lines, free = list(lines), [p if isinstance(p, Point) else Point(*p) for p in free]
    n = len(lines) - 1
    if n < 2:
        raise ConstructionError("carnicer-gasca: need n >= 2 (n + 1 >= 3 lines)")
    if len(free) != n + 1:
        raise ConstructionError(f"carnicer-gasca: need {n + 1} free nodes, got {len(free)}")
    if not general_position(lines):
        raise ConstructionError("carnicer-gasca: lines are not in general position")
    for i, (ell, p) in enumerate(zip(lines, free)):
        if not ell.contains(p):
            raise ConstructionError(f"carnicer-gasca: free node {i + 1} is not on line {i + 1}")
        if any(other.contains(p) for k, other in enumerate(lines) if k != i):
            raise ConstructionError(f"carnicer-gasca: free node {i + 1} is an intersection point")
    if len(set(free)) != len(free):
        raise ConstructionError("carnicer-gasca: free nodes are not distinct")
    if collinear(free):
        raise ConstructionError("carnicer-gasca: free nodes are collinear")
    nodes, labels, names = [], [], []
    for i, j in combinations(range(n + 1), 2):
        nodes.append(lines[i].intersect(lines[j]))
        labels.append("primary")
        names.append(f"A{i + 1}{j + 1}")
    for i, p in enumerate(free):
        nodes.append(p)
        labels.append("free")
        names.append(f"F{i + 1}")
    X = NodeSet(n, tuple(nodes))
    if certify:
        _certify(X, n + 1, "carnicer-gasca")
    return LabeledNodeSet(
        X,
        tuple(labels),
        tuple(names),
        tuple((f"L{i + 1}", ell) for i, ell in enumerate(lines)),
        {"family": "carnicer-gasca", "n": n},
    )


def _point_on(ell: LinearForm, t: int) -> Point:
    # a base point plus t times the direction (-b, a)
    if ell.b != 0:
        base = Point(0, -ell.c / ell.b)
    else:
        base = Point(-ell.c / ell.a, 0)
    return Point(base.x - t * ell.b, base.y + t * ell.a)


CG_PLANTS = ("I", "II", "none")


def _planted_line(rng, lines, box, through=None) -> Optional[LinearForm]:
    primaries = {a.intersect(b) for a, b in combinations(lines, 2)}
    if through is None:
        ell = _random_line(rng, box)
    else:
        d = _random_direction(rng, box)
        ell = _line_with_direction(through, d)
    if any(ell.is_parallel(m) for m in lines):
        return None
    if any(ell.contains(p) for p in primaries if p != through):
        return None
    return ell


def random_carnicer_gasca(
    n: int, seed: int = DEFAULT_SEED, box: int = DEFAULT_BOX, plant: Optional[str] = None
) -> LabeledNodeSet:
    """Random instance; ``plant`` puts an n-node line of the given case into it.

    ``"I"`` makes n free nodes collinear, ``"II"`` lines up a primary node with
    n - 1 free nodes.  The default cycles I, II, none with the seed.
    """
    if plant is None:
        plant = CG_PLANTS[seed % 3]
    if plant not in CG_PLANTS:
        raise ValueError(f"unknown plant {plant!r}; expected one of {CG_PLANTS}")
    rng = random.Random(f"carnicer-gasca:{n}:{seed}")
    for _ in range(MAX_ATTEMPTS):
        lines = _random_general_lines(rng, n + 1, box)
        free = [_point_on(ell, rng.randint(-box, box)) for ell in lines]
        planted = None
        if plant == "I" and n >= 2:
            skip = {rng.randrange(n + 1)}
            planted = _planted_line(rng, lines, box)
        elif plant == "II" and n >= 2:
            a, b = sorted(rng.sample(range(n + 1), 2))
            skip = {a, b}
            planted = _planted_line(rng, lines, box, lines[a].intersect(lines[b]))
        if plant != "none":
            if planted is None:
                continue
            for i, ell in enumerate(lines):
                if i not in skip:
                    free[i] = ell.intersect(planted)
        try:
            out = carnicer_gasca(lines, free)
        except ConstructionError:
            continue
        out.provenance.update({"seed": seed, "box": box, "plant": plant})
        if planted is not None:
            out = LabeledNodeSet(out.node_set, out.labels, out.names, out.lines + (("P", planted),), out.provenance)
        return out
    raise GenerationError(f"carnicer-gasca: no valid instance for n={n}, seed={seed}")


# ---------------------------------------------- exactly n maximal lines

@dataclass(frozen=True)
class NMaximalRecipe:
    """``n`` maximal lines, the outside node, three lines through it, and for
    each maximal line the indices of the two concurrent lines carrying its
    additional nodes."""

    maximal: Tuple[LinearForm, ...]
    outside: Point
    concurrent: Tuple[LinearForm, LinearForm, LinearForm]
    assignment: Tuple[Tuple[int, int], ...]


def n_maximal_set(recipe: NMaximalRecipe, certify: bool = True) -> LabeledNodeSet:
    ms = list(recipe.maximal)
    n = len(ms)
    O = recipe.outside
    ls = list(recipe.concurrent)
    if n < 3:
        raise ConstructionError("n-maximal: need n >= 3 maximal lines")
    if not general_position(ms):
        raise ConstructionError("n-maximal: maximal lines are not in general position")
    if len(ls) != 3 or len(set(ls)) != 3:
        raise ConstructionError("n-maximal: need three distinct concurrent lines")
    if not all(ell.contains(O) for ell in ls):
        raise ConstructionError("n-maximal: the three lines are not concurrent at the outside node")
    if any(m.contains(O) for m in ms):
        raise ConstructionError("n-maximal: the outside node lies on a maximal line")
    if len(recipe.assignment) != n:
        raise ConstructionError("n-maximal: one assignment pair per maximal line is required")
    nodes, labels, names = [], [], []
    for i, j in combinations(range(n), 2):
        nodes.append(ms[i].intersect(ms[j]))
        labels.append("intersection")
        names.append(f"A{i + 1}{j + 1}")
    for i, (m, pair) in enumerate(zip(ms, recipe.assignment)):
        if len(set(pair)) != 2 or not set(pair) <= {0, 1, 2}:
            raise ConstructionError(f"n-maximal: bad assignment {pair} for M{i + 1}")
        for tag, k in zip(("", "'"), pair):
            try:
                p = m.intersect(ls[k])
            except DegenerateInputError:
                raise ConstructionError(f"n-maximal: M{i + 1} is parallel to L{k + 1}") from None
            nodes.append(p)
            labels.append("additional")
            names.append(f"A{i + 1}{tag}")
    nodes.append(O)
    labels.append("outside")
    names.append("O")
    if len(set(nodes)) != len(nodes):
        raise ConstructionError("n-maximal: intersection and additional nodes are not all distinct")
    X = NodeSet(n, tuple(nodes))
    for k, ell in enumerate(ls):
        if len(nodes_on(X, ell)) >= n + 1:
            raise ConstructionError(f"n-maximal: L{k + 1} contains n+1 nodes")
    for i, m in enumerate(ms):
        if len(nodes_on(X, m)) != n + 1:
            raise ConstructionError(f"n-maximal: M{i + 1} does not carry exactly n+1 nodes")
    if certify:
        _certify(X, n, "n-maximal")
    return LabeledNodeSet(
        X,
        tuple(labels),
        tuple(names),
        tuple([(f"M{i + 1}", m) for i, m in enumerate(ms)] + [(f"L{k + 1}", ell) for k, ell in enumerate(ls)]),
        {"family": "n-maximal", "n": n},
    )


def _random_assignment(rng: random.Random, n: int) -> Tuple[Tuple[int, int], ...]:
    # every concurrent line may carry at most n - 1 additional nodes
    for _ in range(MAX_ATTEMPTS):
        pairs = []
        for _ in range(n):
            skip = rng.randrange(3)
            pairs.append(tuple(k for k in range(3) if k != skip))
        load = [sum(k in p for p in pairs) for k in range(3)]
        if max(load) <= n - 1:
            return tuple(pairs)
    raise GenerationError(f"no admissible assignment for n={n}")


def _random_direction(rng: random.Random, box: int) -> Tuple[int, int]:
    while True:
        d = (rng.randint(-box, box), rng.randint(-box, box))
        if d != (0, 0):
            return d


def _line_with_direction(O: Point, d) -> LinearForm:
    return LinearForm(d[1], -d[0], -(d[1] * O.x - d[0] * O.y))


def random_n_maximal_recipe(n: int, rng: random.Random, box: int) -> NMaximalRecipe:
    ms = _random_general_lines(rng, n, box)
    while True:
        O = Point(rng.randint(-box, box), rng.randint(-box, box))
        if not any(m.contains(O) for m in ms):
            break
    ls = []
    while len(ls) < 3:
        ell = _line_with_direction(O, _random_direction(rng, box))
        if ell not in ls:
            ls.append(ell)
    return NMaximalRecipe(tuple(ms), O, tuple(ls), _random_assignment(rng, n))


def random_n_maximal(n: int, seed: int = DEFAULT_SEED, box: int = DEFAULT_BOX) -> LabeledNodeSet:
    rng = random.Random(f"n-maximal:{n}:{seed}")
    for _ in range(MAX_ATTEMPTS):
        try:
            out = n_maximal_set(random_n_maximal_recipe(n, rng, box))
        except ConstructionError:
            continue
        out.provenance.update({"seed": seed, "box": box})
        return out
    raise GenerationError(f"n-maximal: no valid instance for n={n}, seed={seed}")


# ------------------------------------------- GC_3 with three maximal lines

def _gc3_labels(out: LabeledNodeSet, family: str, unused: Optional[LinearForm]) -> LabeledNodeSet:
    """Rename an n-maximal set at n = 3 into the vertex/free/outside vocabulary.

    ``l_i`` is the concurrent line that meets the two maximal lines other than
    ``M_i``; ``A = M1 M2``, ``B = M2 M3``, ``C = M3 M1``.
    """
    ms = [out.line(f"M{i}") for i in (1, 2, 3)]
    ls = [out.line(f"L{k}") for k in (1, 2, 3)]
    ell_of = {}
    for i, m in enumerate(ms):
        # the concurrent line carrying no additional node of M_i
        for k, ell in enumerate(ls):
            if not any(ell.contains(p) for p in nodes_on(out.node_set, m)):
                ell_of[i] = ell
    vertex_names = {(0, 1): "A", (1, 2): "B", (0, 2): "C"}
    labels, names = [], []
    for p in out.nodes:
        on_m = [i for i, m in enumerate(ms) if m.contains(p)]
        if len(on_m) == 2:
            labels.append("vertex")
            names.append(vertex_names[tuple(on_m)])
        elif len(on_m) == 1:
            labels.append("free")
            j = next(j for j in ell_of if ell_of[j].contains(p))
            names.append(f"F{on_m[0] + 1}{j + 1}")
        else:
            labels.append("outside")
            names.append("O")
    lines = [(f"M{i + 1}", m) for i, m in enumerate(ms)]
    lines += [(f"l{i + 1}", ell_of[i]) for i in range(3)]
    if unused is not None:
        lines.append(("l*", unused))
    prov = dict(out.provenance)
    prov["family"] = family
    return LabeledNodeSet(out.node_set, tuple(labels), tuple(names), tuple(lines), prov)


def aligned_third_line(ms: Sequence[LinearForm], O: Point, l1: LinearForm, l2: LinearForm) -> Tuple[LinearForm, LinearForm]:
    """Third line through ``O`` that makes one free node per maximal line collinear.

    ``l1`` misses M1 and ``l2`` misses M2; the returned line ``l3`` misses M3.
    The transversal passes through ``l2 M1``, ``l1 M3`` and ``l3 M2``.
    """
    m1, m2, m3 = ms
    a = l2.intersect(m1)
    c = l1.intersect(m3)
    star = line_through(a, c)
    p = star.intersect(m2)
    return line_through(O, p), star


def three_maximal_gc3(seed: int = DEFAULT_SEED, box: int = DEFAULT_BOX, align: Optional[bool] = None) -> LabeledNodeSet:
    """Random GC_3 set with exactly three maximal lines.

    When ``align`` is None the seed decides (even seeds align); aligned members
    carry a fourth 3-node line ``l*`` through one free node of each maximal line.
    """
    rng = random.Random(f"three-maximal-gc3:{seed}")
    if align is None:
        align = seed % 2 == 0
    for _ in range(MAX_ATTEMPTS):
        ms = _random_general_lines(rng, 3, box)
        O = Point(rng.randint(-box, box), rng.randint(-box, box))
        if any(m.contains(O) for m in ms):
            continue
        l1 = _line_with_direction(O, _random_direction(rng, box))
        l2 = _line_with_direction(O, _random_direction(rng, box))
        star = None
        try:
            if align:
                l3, star = aligned_third_line(ms, O, l1, l2)
            else:
                l3 = _line_with_direction(O, _random_direction(rng, box))
            # L_k carries the free nodes of the two maximal lines it does not skip
            recipe = NMaximalRecipe(tuple(ms), O, (l1, l2, l3), ((1, 2), (0, 2), (0, 1)))
            out = n_maximal_set(recipe)
        except (ConstructionError, DegenerateInputError):
            continue
        if star is not None and len(nodes_on(out.node_set, star)) != 3:
            continue
        out.provenance.update({"seed": seed, "box": box, "aligned": align})
        return _gc3_labels(out, "three-maximal-gc3", star)
    raise GenerationError(f"three-maximal-gc3: no valid instance for seed={seed}")


# --------------------------------------------------------- counterexample

# Triangle M1: y = 0, M2: x = 0, M3: x + y = 6 with outside node O = (2, 2).
# l1: y = 2, l2: x + 3y = 8, l3: x + y = 4 pass through O; the unused
# transversal l*: x + 2y = 8 meets the maximal lines at (8, 0), (0, 4), (4, 2).
COUNTEREXAMPLE_NODES = (
    ("A", "vertex", (0, 0)),
    ("B", "vertex", (0, 6)),
    ("C", "vertex", (6, 0)),
    ("F12", "free", (8, 0)),
    ("F13", "free", (4, 0)),
    ("F21", "free", (0, 2)),
    ("F23", "free", (0, 4)),
    ("F31", "free", (4, 2)),
    ("F32", "free", (5, 1)),
    ("O", "outside", (2, 2)),
)
COUNTEREXAMPLE_LINES = (
    ("M1", LinearForm(0, 1, 0)),
    ("M2", LinearForm(1, 0, 0)),
    ("M3", LinearForm(1, 1, -6)),
    ("l1", LinearForm(0, 1, -2)),
    ("l2", LinearForm(1, 3, -8)),
    ("l3", LinearForm(1, 1, -4)),
    ("l*", LinearForm(1, 2, -8)),
)


def counterexample_gc3() -> Tuple[LabeledNodeSet, LinearForm]:
    """The frozen GC_3 set X* and its 3-node line used by no node."""
    X = NodeSet(3, tuple(Point(*xy) for _, _, xy in COUNTEREXAMPLE_NODES))
    out = LabeledNodeSet(
        X,
        tuple(role for _, role, _ in COUNTEREXAMPLE_NODES),
        tuple(name for name, _, _ in COUNTEREXAMPLE_NODES),
        COUNTEREXAMPLE_LINES,
        {"family": "counterexample", "n": 3},
    )
    return out, out.line("l*")


# ------------------------------------------------------- principal lattice

def _projective_map(rng: random.Random, box: int):
    while True:
        m = [[rng.randint(-box, box) for _ in range(3)] for _ in range(3)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det:
            return m


def principal_lattice(n: int, seed: int = DEFAULT_SEED, box: int = 3) -> LabeledNodeSet:
    """Projective image of the triangular grid ``{(i, j): i + j <= n}``.

    The grid is GC_n with exactly three maximal lines (for n >= 1) and a
    projective map defined on every node preserves both properties.
    Seed 0 is the grid itself.
    """
    rng = random.Random(f"principal:{n}:{seed}")
    grid = [(i, j) for j in range(n + 1) for i in range(n + 1 - j)]
    for _ in range(MAX_ATTEMPTS):
        m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]] if seed == 0 else _projective_map(rng, box)
        pts = []
        for i, j in grid:
            w = m[2][0] * i + m[2][1] * j + m[2][2]
            if w == 0:
                break
            pts.append(Point(Fraction(m[0][0] * i + m[0][1] * j + m[0][2], w),
                             Fraction(m[1][0] * i + m[1][1] * j + m[1][2], w)))
        else:
            X = NodeSet(n, tuple(pts))
            try:
                _certify(X, 3, "principal")
            except ConstructionError:
                continue
            labels = tuple("vertex" if (i, j) in {(0, 0), (n, 0), (0, n)} else "grid" for i, j in grid)
            names = tuple(f"P{i}{j}" if n < 10 else f"P{i}_{j}" for i, j in grid)
            return LabeledNodeSet(X, labels, names, (), {"family": "principal", "n": n, "seed": seed, "box": box})
    raise GenerationError(f"principal: no valid instance for n={n}, seed={seed}")


# ------------------------------------------------ extension by a new line

def extend_by_maximal_line(X: LabeledNodeSet, M: LinearForm, new_nodes: Sequence[Point]) -> Optional[LabeledNodeSet]:
    """Add ``n + 2`` nodes on ``M``; returns the degree ``n + 1`` set only if poised.

    GC and maximal-line checks are left to the caller.
    """
    new_nodes = [p if isinstance(p, Point) else Point(*p) for p in new_nodes]
    n = X.n
    if len(new_nodes) != n + 2:
        raise DomainError(f"need {n + 2} new nodes, got {len(new_nodes)}")
    if len(set(new_nodes)) != len(new_nodes):
        raise DomainError("new nodes are not distinct")
    for p in new_nodes:
        if not M.contains(p):
            raise DomainError(f"new node {p} is not on {M}")
        if p in X.node_set:
            raise DomainError(f"new node {p} is already a node")
    Y = NodeSet(n + 1, X.nodes + tuple(new_nodes))
    if not is_poised(Y):
        return None
    prov = {"family": "extension", "n": n + 1, "base": dict(X.provenance)}
    names = X.names + tuple(f"E{k + 1}" for k in range(len(new_nodes))) if X.names else ()
    return LabeledNodeSet(
        Y,
        X.labels + ("extension",) * len(new_nodes),
        names,
        X.lines + ((f"E{n + 1}", M),),
        prov,
    )


def generate(family: str, n: Optional[int] = None, seed: int = DEFAULT_SEED, box: Optional[int] = None) -> LabeledNodeSet:
    """Dispatch by family tag (the tags used on the command line)."""
    kw = {} if box is None else {"box": box}
    if family == "chung-yao":
        return random_chung_yao(_need(n, family), seed, **kw)
    if family == "carnicer-gasca":
        return random_carnicer_gasca(_need(n, family), seed, **kw)
    if family == "n-maximal":
        return random_n_maximal(_need(n, family), seed, **kw)
    if family == "three-maximal-gc3":
        if n not in (None, 3):
            raise ValueError("three-maximal-gc3 has degree 3")
        return three_maximal_gc3(seed, **kw)
    if family == "counterexample":
        if n not in (None, 3):
            raise ValueError("the counterexample has degree 3")
        return counterexample_gc3()[0]
    if family == "principal":
        return principal_lattice(_need(n, family), seed, **kw)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _need(n, family):
    if n is None:
        raise ValueError(f"family {family} needs a degree n")
    return n
