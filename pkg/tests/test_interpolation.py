from fractions import Fraction as F

import pytest

from gcsets.exact import BivarPolynomial, LinearForm, Point, product_of_lines
from gcsets.interpolation import (
    DomainError,
    NodeSet,
    PoisednessError,
    dependence_profile,
    egh_witness,
    fundamental_polynomial,
    fundamental_polynomials,
    has_fundamental_polynomial,
    interpolate,
    is_independent,
    is_poised,
    vandermonde,
)
from gcsets.lattices import chung_yao, random_chung_yao

TRI = NodeSet(1, ((0, 0), (1, 0), (0, 1)))


def test_vandermonde_layout():
    assert vandermonde(TRI).to_lists() == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]
    assert vandermonde(NodeSet(0, ((3, 4),))).to_lists() == [[1]]


def test_poisedness_examples():
    assert is_poised(random_chung_yao(2, seed=1).node_set)
    assert not is_poised(NodeSet(1, ((0, 0), (1, 1), (2, 2))))
    assert is_poised(NodeSet(0, ((5, 5),)))
    assert not is_poised(NodeSet(2, ((0, 0), (1, 0))))


def test_duplicate_nodes_rejected():
    with pytest.raises(DomainError):
        NodeSet(1, ((0, 0), (0, 0), (1, 1)))


def test_independence_examples():
    X = random_chung_yao(3, seed=2).node_set
    assert is_independent(X.subset(X.nodes[:6]), 3)
    assert not is_independent(NodeSet(2, tuple((t, 2 * t + 1) for t in range(4))), 2)
    assert is_independent(NodeSet(2, ()), 2)


def test_fundamental_polynomial_by_hand():
    p = fundamental_polynomial(TRI, Point(0, 0))
    assert p == BivarPolynomial.from_terms({(0, 0): 1, (1, 0): -1, (0, 1): -1})


def test_fundamental_polynomial_errors():
    with pytest.raises(DomainError):
        fundamental_polynomial(TRI, Point(7, 7))
    with pytest.raises(PoisednessError):
        fundamental_polynomial(NodeSet(1, ((0, 0), (1, 1), (2, 2))), Point(0, 0))


def test_chung_yao_fundamental_is_line_product():
    lines = [LinearForm(1, 0, 0), LinearForm(0, 1, 0), LinearForm(1, 1, -2), LinearForm(1, -1, -3)]
    L = chung_yao(lines)
    X = L.node_set
    for A in X.nodes:
        others = [ell for ell in lines if not ell.contains(A)]
        prod = product_of_lines(others)
        assert fundamental_polynomial(X, A) == prod.scale(1 / prod(A))


def test_interpolate():
    X = random_chung_yao(2, seed=4).node_set
    assert interpolate(X, [0] * 6).is_zero()
    assert interpolate(X, [1] * 6) == BivarPolynomial.constant(1)
    for k, A in enumerate(X.nodes):
        values = [int(i == k) for i in range(6)]
        assert interpolate(X, values) == fundamental_polynomial(X, A)
    with pytest.raises(DomainError):
        interpolate(X, [1, 2])


def test_partition_of_unity_small():
    X = random_chung_yao(3, seed=0).node_set
    total = BivarPolynomial.zero(3)
    for p in fundamental_polynomials(X):
        total = total + p
    assert total == BivarPolynomial.constant(1)


def test_egh_examples():
    four = NodeSet(2, tuple(Point(t, 3 - t) for t in range(4)))
    assert egh_witness(four, 2) == list(four.nodes)
    generic = NodeSet(2, ((0, 0), (1, 0), (0, 1), (2, 3), (5, 1)))
    assert egh_witness(generic, 2) == []
    assert is_independent(generic, 2)
    three = NodeSet(1, ((0, 0), (1, 1), (F(1, 2), F(1, 2))))
    assert len(egh_witness(three, 1)) == 3


def test_egh_domain():
    with pytest.raises(DomainError):
        egh_witness(NodeSet(1, ((0, 0), (1, 0), (0, 1), (1, 1))), 1)


def test_dependence_profile_matches_per_node_test():
    X = NodeSet(2, ((0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 2)))
    dependent, free = dependence_profile(X, 2)
    assert dependent
    assert free == [A for A in X.nodes if has_fundamental_polynomial(X, A, 2)]
    assert Point(0, 1) in free and Point(0, 0) not in free
