import pytest

from gcsets.analysis import (
    Case,
    conic_through,
    factor_into_lines,
    is_gc_set,
    non_usage_set,
    residual_set,
    usage_report,
    usage_set,
    uses_line,
    verify_nell,
)
from gcsets.exact import LinearForm, Point, line_through, mul_linear
from gcsets.incidence import build_index, k_node_lines, maximal_lines
from gcsets.interpolation import NodeSet, PoisednessError, fundamental_polynomial
from gcsets.lattices import random_carnicer_gasca, random_chung_yao


def test_chung_yao_factorization():
    L = random_chung_yao(4, seed=1)
    X = L.node_set
    arrangement = [ell for _, ell in L.lines]
    for A in X.nodes:
        fac = factor_into_lines(X, A)
        assert set(fac.lines) == {ell for ell in arrangement if not ell.contains(A)}
        assert fac.polynomial() == fundamental_polynomial(X, A)


def test_carnicer_gasca_factorizations():
    L = random_carnicer_gasca(4, seed=2)
    X = L.node_set
    lines = [ell for name, ell in L.lines if name.startswith("L")]
    free = L.with_role("free")
    for A in free:
        assert set(factor_into_lines(X, A).lines) == {ell for ell in lines if not ell.contains(A)}
    for A in L.with_role("primary"):
        fac = factor_into_lines(X, A)
        extra = [ell for ell in fac.lines if ell not in lines]
        assert len(extra) == 1
        on_extra = [p for p in free if extra[0].contains(p)]
        assert len(on_extra) >= 2
        assert len([ell for ell in fac.lines if ell in lines]) == X.n - 1


def test_generic_six_points_not_gc():
    X = NodeSet(2, ((0, 0), (3, 1), (1, 4), (5, 2), (2, 7), (6, 5)))
    res = is_gc_set(X)
    assert not res and res.failing_nodes


def test_is_gc_set_requires_poised():
    with pytest.raises(PoisednessError):
        is_gc_set(NodeSet(1, ((0, 0), (1, 1), (2, 2))))


def test_uses_line_basics(xstar):
    L, star = xstar
    X = L.node_set
    for M in maximal_lines(X):
        assert all(uses_line(X, A, M) for A in X.nodes if not M.contains(A))
        A = next(p for p in X.nodes if M.contains(p))
        assert not uses_line(X, A, M)
    assert not any(uses_line(X, A, star) for A in X.nodes)


def test_xstar_usage_reports(xstar):
    L, star = xstar
    X = L.node_set
    rep = usage_report(X, L.line("l1"))
    assert len(rep.usage_set) == 3 and rep.case is Case.CASE_I
    assert rep.witness == L.line("M1")
    rep = usage_report(X, star)
    assert rep.usage_set == [] and rep.case is Case.CASE_NONE


def test_partition_identity():
    X = random_carnicer_gasca(3, seed=1).node_set
    for ell in build_index(X).lines:
        xl, nl = set(usage_set(X, ell)), set(non_usage_set(X, ell))
        off = {p for p in X.nodes if not ell.contains(p)}
        assert xl | nl == off and not xl & nl


def test_carnicer_gasca_n4_values():
    seen = set()
    for seed in range(5):
        X = random_carnicer_gasca(4, seed).node_set
        for ell in k_node_lines(X, 4):
            seen.add(len(usage_set(X, ell)))
    assert seen == {6, 3}


def test_nell_examples(xstar):
    L, star = xstar
    v = verify_nell(L.node_set, star)
    assert v.ok and v.dependent and len(v.non_usage_set) == 7
    M = maximal_lines(L.node_set)[0]
    v = verify_nell(L.node_set, M)
    assert v.ok and v.non_usage_set == []


def test_nell_case_ii_size():
    X = random_carnicer_gasca(4, seed=1).node_set
    (ell,) = k_node_lines(X, 4)
    assert len(usage_set(X, ell)) == 3
    v = verify_nell(X, ell)
    assert v.ok and len(v.non_usage_set) == 8


def test_conic_through():
    five = [Point(0, 0), Point(1, 0), Point(0, 1), Point(2, 3), Point(-1, 4)]
    c = conic_through(five)
    assert c is not None and not c.ambiguous
    assert all(c(p) == 0 for p in five)
    assert conic_through(five + [Point(7, -2)]) is None


def test_conic_is_product_of_maximal_lines_in_case_ii():
    X = random_carnicer_gasca(4, seed=1).node_set
    (ell,) = k_node_lines(X, 4)
    rep = usage_report(X, ell)
    m1, m2 = rep.case_ii_witnesses[0]
    c = conic_through(rep.non_usage_set)
    assert c.proportional_to(mul_linear(m1.to_polynomial(), m2))


def test_residual_set():
    L = random_chung_yao(3, seed=0)
    X = L.node_set
    M = L.lines[0][1]
    R = residual_set(X, [M])
    assert R.n == 2 and len(R) == 6 and is_gc_set(R)
    assert residual_set(X, []) == X
    for A in R.nodes:
        lhs = fundamental_polynomial(X, A)
        rhs = mul_linear(fundamental_polynomial(R, A), M)
        assert lhs == rhs.scale(1 / M(A))


def test_line_through_two_nodes_is_in_index():
    X = random_chung_yao(2, seed=0).node_set
    ell = line_through(X.nodes[0], X.nodes[1])
    assert ell in build_index(X).line_nodes
    assert isinstance(ell, LinearForm)
