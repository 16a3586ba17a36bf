"""Exact scalars, points, lines and dense bivariate polynomials.

Scalars are :class:`fractions.Fraction`.  Polynomials are stored densely over
the coefficient triangle ``i + j <= n`` in graded lexicographic order::

    1, x, y, x^2, xy, y^2, x^3, x^2y, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

try:
    from gmpy2 import mpq as _fast
except ImportError:  # pragma: no cover
    _fast = None

Rational = Fraction
Number = Union[int, Fraction, str]


class DegenerateInputError(ValueError):
    """Raised when geometric input is degenerate (coincident points, zero line)."""


def as_rational(value: Number) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use a string or Fraction")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """``p/q``, or ``p`` when the denominator is 1."""
    return str(q)


def dim_pi(n: int) -> int:
    """Dimension of the space of bivariate polynomials of total degree <= n."""
    if n < 0:
        return 0
    return (n + 2) * (n + 1) // 2


@lru_cache(maxsize=None)
def monomials(n: int) -> Tuple[Tuple[int, int], ...]:
    """Exponent pairs ``(i, j)`` of ``x^i y^j`` in graded lexicographic order."""
    return tuple((i, d - i) for d in range(n + 1) for i in range(d, -1, -1))


def monomial_index(i: int, j: int) -> int:
    d = i + j
    return d * (d + 1) // 2 + (d - i)


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True, order=True)
class LinearForm:
    """The line ``a*x + b*y + c = 0``, always stored in canonical form.

    The first nonzero of ``(a, b)`` is scaled to 1, so equal lines compare
    equal componentwise and hash identically.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = (as_rational(v) for v in (self.a, self.b, self.c))
        if a == 0 and b == 0:
            raise DegenerateInputError("a line needs (a, b) != (0, 0)")
        lead = a if a != 0 else b
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)

    def __call__(self, pt: Point) -> Fraction:
        return self.a * pt.x + self.b * pt.y + self.c

    def contains(self, pt: Point) -> bool:
        return self(pt) == 0

    def is_parallel(self, other: "LinearForm") -> bool:
        return self.a * other.b - other.a * self.b == 0

    def intersect(self, other: "LinearForm") -> Point:
        det = self.a * other.b - other.a * self.b
        if det == 0:
            raise DegenerateInputError(f"lines {self} and {other} are parallel")
        x = (self.b * other.c - other.b * self.c) / det
        y = (other.a * self.c - self.a * other.c) / det
        return Point(x, y)

    def to_polynomial(self) -> "BivarPolynomial":
        return BivarPolynomial(1, (self.c, self.a, self.b))

    def triple(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def __repr__(self):
        return f"LinearForm({self.a}, {self.b}, {self.c})"

    def __str__(self):
        parts = []
        for coef, sym in ((self.a, "x"), (self.b, "y")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            body = sym if mag == 1 else f"{mag}*{sym}"
            parts.append((sign, body))
        if self.c != 0:
            parts.append(("-" if self.c < 0 else "+", str(abs(self.c))))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text + " = 0"


def _q(v):
    if _fast is None:
        return Fraction(v)
    return _fast(v.numerator, v.denominator) if isinstance(v, Fraction) else _fast(v)


def line_eval(ell: LinearForm, pt: Point) -> Fraction:
    return ell(pt)


def line_through(p: Point, q: Point) -> LinearForm:
    if p == q:
        raise DegenerateInputError(f"cannot span a line by the single point {p}")
    a = q.y - p.y
    b = p.x - q.x
    return LinearForm(a, b, -(a * p.x + b * p.y))


def collinear(points: Sequence[Point]) -> bool:
    pts = list(dict.fromkeys(points))
    if len(pts) <= 2:
        return True
    ell = line_through(pts[0], pts[1])
    return all(ell.contains(p) for p in pts[2:])


@dataclass(frozen=True, eq=False)
class BivarPolynomial:
    """Polynomial of total degree at most ``degree_bound``.

    Equality is mathematical: two polynomials with different degree bounds are
    equal when all their coefficients agree.
    """

    degree_bound: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError("degree_bound must be nonnegative")
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if len(coeffs) != dim_pi(self.degree_bound):
            raise ValueError(
                f"expected {dim_pi(self.degree_bound)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, n: int = 0) -> "BivarPolynomial":
        return cls(n, (Fraction(0),) * dim_pi(n))

    @classmethod
    def constant(cls, value: Number, n: int = 0) -> "BivarPolynomial":
        coeffs = [Fraction(0)] * dim_pi(n)
        coeffs[0] = as_rational(value)
        return cls(n, tuple(coeffs))

    @classmethod
    def from_terms(cls, terms: dict, n: int | None = None) -> "BivarPolynomial":
        """Build from ``{(i, j): coefficient}``."""
        if n is None:
            n = max((i + j for (i, j), c in terms.items() if c != 0), default=0)
        coeffs = [Fraction(0)] * dim_pi(n)
        for (i, j), c in terms.items():
            if c == 0:
                continue
            if i + j > n:
                raise ValueError(f"term x^{i} y^{j} exceeds degree bound {n}")
            coeffs[monomial_index(i, j)] += as_rational(c)
        return cls(n, tuple(coeffs))

    def coeff(self, i: int, j: int) -> Fraction:
        if i + j > self.degree_bound:
            return Fraction(0)
        return self.coeffs[monomial_index(i, j)]

    def terms(self) -> dict:
        return {m: c for m, c in zip(monomials(self.degree_bound), self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def total_degree(self) -> int:
        """Actual total degree; -1 for the zero polynomial."""
        return max((i + j for (i, j) in self.terms()), default=-1)

    def __eq__(self, other):
        if not isinstance(other, BivarPolynomial):
            return NotImplemented
        return self.terms() == other.terms()

    def __hash__(self):
        return hash(frozenset(self.terms().items()))

    def __call__(self, pt: Point) -> Fraction:
        return eval_poly(self, pt)

    def with_bound(self, n: int) -> "BivarPolynomial":
        if n == self.degree_bound:
            return self
        return BivarPolynomial.from_terms(self.terms(), n)

    def __add__(self, other: "BivarPolynomial") -> "BivarPolynomial":
        n = max(self.degree_bound, other.degree_bound)
        a, b = self.with_bound(n), other.with_bound(n)
        return BivarPolynomial(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: "BivarPolynomial") -> "BivarPolynomial":
        return self + other.scale(-1)

    def scale(self, s: Number) -> "BivarPolynomial":
        s = as_rational(s)
        return BivarPolynomial(self.degree_bound, tuple(s * c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, LinearForm):
            return mul_linear(self, other)
        if isinstance(other, BivarPolynomial):
            n = self.degree_bound + other.degree_bound
            out = [Fraction(0)] * dim_pi(n)
            for (i1, j1), c1 in self.terms().items():
                for (i2, j2), c2 in other.terms().items():
                    out[monomial_index(i1 + i2, j1 + j2)] += c1 * c2
            return BivarPolynomial(n, tuple(out))
        return self.scale(other)

    __rmul__ = __mul__

    def __str__(self):
        terms = self.terms()
        if not terms:
            return "0"
        chunks = []
        for (i, j) in monomials(self.degree_bound):
            c = terms.get((i, j))
            if c is None:
                continue
            mono = "*".join(
                s for s in ((f"x^{i}" if i > 1 else "x") if i else "",
                            (f"y^{j}" if j > 1 else "y") if j else "") if s
            )
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            chunks.append(("-" if c < 0 else "+", body))
        text = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"BivarPolynomial({self.degree_bound}, '{self}')"


def eval_poly(p: BivarPolynomial, pt: Point) -> Fraction:
    x, y = pt.x, pt.y
    total = Fraction(0)
    xp = [Fraction(1)]
    yp = [Fraction(1)]
    for _ in range(p.degree_bound):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    for (i, j), c in zip(monomials(p.degree_bound), p.coeffs):
        if c:
            total += c * xp[i] * yp[j]
    return total


def mul_linear(p: BivarPolynomial, ell: LinearForm) -> BivarPolynomial:
    n = p.degree_bound + 1
    out = [Fraction(0)] * dim_pi(n)
    for (i, j), c in zip(monomials(p.degree_bound), p.coeffs):
        if not c:
            continue
        out[monomial_index(i, j)] += ell.c * c
        if ell.a:
            out[monomial_index(i + 1, j)] += ell.a * c
        if ell.b:
            out[monomial_index(i, j + 1)] += ell.b * c
    return BivarPolynomial(n, tuple(out))


def _univariate_mul_add(acc: list, r: Tuple[Fraction, Fraction], q: list) -> list:
    # acc + r * q, with r = r0 + r1*t
    out = list(acc) + [Fraction(0)] * max(0, len(q) + 1 - len(acc))
    for k, qk in enumerate(q):
        if qk:
            out[k] += r[0] * qk
            out[k + 1] += r[1] * qk
    return out


def divide_by_linear(p: BivarPolynomial, ell: LinearForm) -> Tuple[BivarPolynomial, bool]:
    """Exact division of ``p`` by the line ``ell``.

    ``p`` is viewed as a polynomial in the leading variable of ``ell`` (``x``
    when ``a != 0``, else ``y``) with coefficients in the other one, and divided
    synthetically by ``lead - r(t)``.  The remainder ``p(r(t), t)`` must vanish
    identically for the division to be exact.
    """
    n = p.degree_bound
    if n < 1:
        raise ValueError("divide_by_linear needs degree_bound >= 1")
    swap = ell.a == 0
    # rows[k][m]: coefficient of lead^k * other^m
    rows = [[Fraction(0)] * (n - k + 1) for k in range(n + 1)]
    for (i, j), c in zip(monomials(n), p.coeffs):
        if c:
            if swap:
                rows[j][i] = c
            else:
                rows[i][j] = c
    # ell = lead + s*other + c  =>  lead = r0 + r1*other
    r = (-ell.c, Fraction(0) if swap else -ell.b)
    q = [None] * n
    q[n - 1] = rows[n][:]
    for k in range(n - 1, 0, -1):
        q[k - 1] = _univariate_mul_add(rows[k], r, q[k])
    remainder = _univariate_mul_add(rows[0], r, q[0])
    exact = not any(remainder)
    terms = {}
    for k, row in enumerate(q):
        for m, c in enumerate(row):
            if c and k + m <= n - 1:
                terms[(m, k) if swap else (k, m)] = c
    quotient = BivarPolynomial.from_terms(terms, n - 1)
    return quotient, exact


def vanishes_on(p: BivarPolynomial, ell: LinearForm) -> bool:
    """Whether ``ell`` divides ``p``: p restricted to the line has degree <= n, so
    vanishing at ``n + 1`` distinct points of the line is equivalent."""
    n = p.degree_bound
    mons = monomials(n)
    coeffs = [(i, j, _q(c)) for (i, j), c in zip(mons, p.coeffs) if c]
    if not coeffs:
        return True
    a, b, c = _q(ell.a), _q(ell.b), _q(ell.c)
    for t in range(n + 1):
        if a:
            x, y = -(b * t + c) / a, _q(t)
        else:
            x, y = _q(t), -c / b
        xs, ys = [_q(1)], [_q(1)]
        for _ in range(n):
            xs.append(xs[-1] * x)
            ys.append(ys[-1] * y)
        if sum(k * xs[i] * ys[j] for i, j, k in coeffs) != 0:
            return False
    return True


def product_of_lines(lines: Iterable[LinearForm], scalar: Number = 1) -> BivarPolynomial:
    p = BivarPolynomial.constant(scalar)
    for ell in lines:
        p = mul_linear(p, ell)
    return p
