import pytest

from gcsets.analysis import is_gc_set, residual_set, usage_set
from gcsets.exact import LinearForm, Point
from gcsets.incidence import k_node_lines, maximal_lines, mu, nodes_on
from gcsets.interpolation import DomainError, is_poised
from gcsets.lattices import (
    COUNTEREXAMPLE_NODES,
    ConstructionError,
    NMaximalRecipe,
    carnicer_gasca,
    chung_yao,
    counterexample_gc3,
    extend_by_maximal_line,
    generate,
    n_maximal_set,
    principal_lattice,
    random_carnicer_gasca,
    random_chung_yao,
    random_n_maximal,
    three_maximal_gc3,
)

X_AXIS, Y_AXIS = LinearForm(0, 1, 0), LinearForm(1, 0, 0)


def test_chung_yao_n1():
    L = chung_yao([Y_AXIS, X_AXIS, LinearForm(1, 1, -2)])
    assert set(L.nodes) == {Point(0, 0), Point(0, 2), Point(2, 0)}


def test_chung_yao_rejects_concurrent():
    with pytest.raises(ConstructionError):
        chung_yao([Y_AXIS, X_AXIS, LinearForm(1, 1, 0)])


@pytest.mark.parametrize("n", [2, 3])
def test_chung_yao_random(n):
    X = random_chung_yao(n, seed=11).node_set
    assert is_gc_set(X) and mu(X) == n + 2


def test_carnicer_gasca_n2():
    lines = [X_AXIS, Y_AXIS, LinearForm(1, 1, -4)]
    L = carnicer_gasca(lines, [Point(1, 0), Point(0, 1), Point(2, 2)])
    assert len(L.nodes) == 6 and mu(L.node_set) == 3


def test_carnicer_gasca_rejects_collinear_free():
    lines = [X_AXIS, Y_AXIS, LinearForm(1, 1, -4)]
    # (1, 0), (0, 2) and (-2, 6) all lie on 2x + y = 2
    with pytest.raises(ConstructionError, match="collinear"):
        carnicer_gasca(lines, [Point(1, 0), Point(0, 2), Point(-2, 6)])


def test_carnicer_gasca_n4():
    X = random_carnicer_gasca(4, seed=0).node_set
    assert len(X) == 15 and mu(X) == 5


def test_n_maximal_family():
    L = random_n_maximal(3, seed=0)
    assert mu(L.node_set) == 3 and is_gc_set(L.node_set)
    L = random_n_maximal(4, seed=1)
    assert mu(L.node_set) == 4 and is_gc_set(L.node_set)


def test_n_maximal_rejects_overloaded_line():
    ms = (Y_AXIS, X_AXIS, LinearForm(1, 1, -6))
    O = Point(2, 2)
    ls = (LinearForm(0, 1, -2), LinearForm(1, 3, -8), LinearForm(1, 1, -4))
    # every maximal line hands both of its extra nodes to l1, which then holds too many
    bad = NMaximalRecipe(ms, O, ls, ((0, 0), (0, 0), (0, 0)))
    with pytest.raises(ConstructionError):
        n_maximal_set(bad)


def test_counterexample_frozen():
    L, star = counterexample_gc3()
    X = L.node_set
    assert is_gc_set(X) and mu(X) == 3
    assert len(k_node_lines(X, 3)) == 4
    assert usage_set(X, star) == []
    assert [len(usage_set(X, L.line(f"l{i}"))) for i in (1, 2, 3)] == [3, 3, 3]
    assert len(COUNTEREXAMPLE_NODES) == 10
    # star misses O and the vertices
    for name in ("O", "A", "B", "C"):
        assert not star.contains(L.node(name))


def test_counterexample_vertices_use_a_two_node_line():
    L, _ = counterexample_gc3()
    X = L.node_set
    for name in ("A", "B", "C"):
        fac = is_gc_set(X).factorizations[L.node(name)]
        assert any(len(nodes_on(X, ell)) == 2 for ell in fac.lines)


@pytest.mark.parametrize("seed", range(6))
def test_three_maximal_gc3(seed):
    L = three_maximal_gc3(seed)
    X = L.node_set
    assert mu(X) == 3
    three = k_node_lines(X, 3)
    assert len(three) in (3, 4)
    assert (len(three) == 4) == (seed % 2 == 0)
    for i in (1, 2, 3):
        ell = L.line(f"l{i}")
        assert ell in three and len(usage_set(X, ell)) == 3


def test_principal_lattice_mu3():
    for n in (3, 4):
        X = principal_lattice(n, seed=1).node_set
        assert is_gc_set(X) and mu(X) == 3


def test_extend_by_maximal_line_rebuilds_chung_yao():
    lines = [Y_AXIS, X_AXIS, LinearForm(1, 1, -4), LinearForm(1, -1, -1)]
    base = chung_yao(lines)
    new = LinearForm(1, 2, -7)
    pts = [new.intersect(ell) for ell in lines]
    ext = extend_by_maximal_line(base, new, pts)
    assert ext is not None and ext.n == 3
    assert set(ext.nodes) == set(chung_yao(lines + [new]).nodes)
    assert is_gc_set(ext.node_set) and mu(ext.node_set) == 5


def test_extend_by_maximal_line_errors():
    base = random_chung_yao(2, seed=0)
    M = LinearForm(1, 2, -100)
    with pytest.raises(DomainError):
        extend_by_maximal_line(base, M, [Point(100, 0)])
    with pytest.raises(DomainError):
        extend_by_maximal_line(base, M, [Point(100, 0), Point(0, 50), Point(2, 49), Point(3, 1)])


def test_removal_stability():
    X = random_carnicer_gasca(3, seed=4).node_set
    for M in maximal_lines(X):
        R = residual_set(X, [M])
        assert is_gc_set(R) and mu(R) in (mu(X), mu(X) - 1)


def test_generators_reproducible():
    assert generate("carnicer-gasca", 3, 5).nodes == generate("carnicer-gasca", 3, 5).nodes
    assert generate("chung-yao", 2, 1).nodes != generate("chung-yao", 2, 2).nodes
