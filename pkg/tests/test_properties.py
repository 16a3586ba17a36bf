"""Randomized invariants, driven by hypothesis."""

from fractions import Fraction as F

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gcsets.exact import BivarPolynomial, LinearForm, Point, dim_pi, divide_by_linear, mul_linear
from gcsets.interpolation import NodeSet, is_independent

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero = small.filter(lambda q: q != 0)


@st.composite
def lines(draw):
    a, b = draw(small), draw(small)
    if a == 0 and b == 0:
        a = F(1)
    return LinearForm(a, b, draw(small))


@st.composite
def polys(draw, max_deg=6):
    n = draw(st.integers(0, max_deg))
    coeffs = draw(st.lists(small, min_size=dim_pi(n), max_size=dim_pi(n)))
    return BivarPolynomial(n, tuple(coeffs))


def points_on(ell, k):
    # k distinct rational points on ell
    if ell.b:
        return [Point(t, -(ell.a * t + ell.c) / ell.b) for t in range(k)]
    return [Point(-ell.c / ell.a, t) for t in range(k)]


@settings(max_examples=500, deadline=None)
@given(polys(5), lines())
def test_division_round_trip(q, ell):
    got, exact = divide_by_linear(mul_linear(q, ell), ell)
    assert exact and got == q


@settings(max_examples=200, deadline=None)
@given(polys(5).filter(lambda p: p.degree_bound >= 1), lines())
def test_vanishing_at_n_plus_1_points_means_divisible(p, ell):
    vanish = all(p(pt) == 0 for pt in points_on(ell, p.degree_bound + 1))
    assert vanish == divide_by_linear(p, ell)[1]


@settings(max_examples=200, deadline=None)
@given(lines(), nonzero)
def test_canonical_form_scale_invariant(ell, lam):
    a, b, c = ell.triple()
    assert LinearForm(lam * a, lam * b, lam * c) == ell
    assert LinearForm(*ell.triple()).triple() == ell.triple()


@settings(max_examples=100, deadline=None)
@given(polys(4), lines(), small, small)
def test_eval_of_product(p, ell, x, y):
    pt = Point(x, y)
    assert mul_linear(p, ell)(pt) == p(pt) * ell(pt)


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 3), st.sets(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=8))
def test_removing_a_node_keeps_independence(m, pts):
    X = NodeSet(m, tuple(Point(*p) for p in sorted(pts)))
    if is_independent(X, m):
        for A in X.nodes:
            assert is_independent(X.without([A]), m)
