"""Instance-level verifiers, one per claim about GC_n sets.

Every verifier recomputes usage sets by per-node divisibility and derives case
tags from incidence geometry separately, so that "if and only if" claims are
checked in both directions.  Verdict statuses are ``pass``, ``fail``,
``vacuous`` (the hypothesis never fired) and ``skipped`` (precondition unmet).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from .analysis import (
    conic_through,
    is_gc_at_degree,
    is_gc_set,
    residual_set,
    split_conic,
    usage_report,
    usage_set,
    verify_nell,
)
from .exact import LinearForm, Point, line_through, mul_linear
from .incidence import build_index, check_maximal_structure, k_node_lines, maximal_lines, nodes_on
from .interpolation import NodeSet, fundamental_polynomial, is_poised

PASS, FAIL, VACUOUS, SKIPPED = "pass", "fail", "vacuous", "skipped"

# GM conjecture is settled up to this degree; beyond it some claims are conditional
GM_PROVED_UP_TO = 5


def binom2(k: int) -> int:
    return k * (k - 1) // 2 if k >= 2 else 0


@dataclass
class Verdict:
    claim: str
    status: str
    witnesses: List[dict] = field(default_factory=list)
    detail: str = ""
    checked: int = 0
    conditional: bool = False

    @property
    def failed(self) -> bool:
        return self.status == FAIL


class _Tally:
    """Collects failures for one claim and turns them into a verdict."""

    def __init__(self, claim: str):
        self.claim = claim
        self.failures: List[dict] = []
        self.checked = 0
        self.notes: List[str] = []

    def check(self, ok: bool, what: str, **witness):
        if not ok:
            self.failures.append({"check": what, **witness})
        return ok

    def verdict(self, vacuous_detail: str = "", conditional: bool = False) -> Verdict:
        if self.failures:
            first = self.failures[0]["check"]
            return Verdict(self.claim, FAIL, self.failures, f"{len(self.failures)} violation(s); first: {first}",
                           self.checked, conditional)
        if self.checked == 0:
            return Verdict(self.claim, VACUOUS, [], vacuous_detail, 0, conditional)
        detail = "; ".join(self.notes) if self.notes else f"{self.checked} instance(s) checked"
        return Verdict(self.claim, PASS, [], detail, self.checked, conditional)


def _line_witness(ell: LinearForm, X: NodeSet, usage: Optional[Sequence[Point]] = None) -> dict:
    w = {"line": [str(v) for v in ell.triple()]}
    if usage is not None:
        w["usage_set"] = sorted(X.index(p) for p in usage)
    return w


def n_node_lines(X: NodeSet) -> List[LinearForm]:
    """Lines carrying exactly ``n`` nodes.

    For ``n = 1`` there are infinitely many; a deterministic finite sample is
    used: through each node, the parallel to the opposite side and the line to
    the midpoint of the other two nodes.
    """
    n = X.n
    if n >= 2:
        return k_node_lines(X, n)
    if n != 1 or len(X) != 3:
        return []
    out = []
    for k, A in enumerate(X.nodes):
        B, C = [p for i, p in enumerate(X.nodes) if i != k]
        mid = Point((B.x + C.x) / 2, (B.y + C.y) / 2)
        out.append(line_through(A, mid))
        side = line_through(B, C)
        out.append(LinearForm(side.a, side.b, -(side.a * A.x + side.b * A.y)))
    return [ell for ell in dict.fromkeys(out) if len(nodes_on(X, ell)) == 1]


def _as_set(points) -> frozenset:
    return frozenset(points)


def _off(X: NodeSet, lines: Iterable[LinearForm]) -> frozenset:
    lines = list(lines)
    return frozenset(p for p in X.nodes if not any(m.contains(p) for m in lines))


def _gc_at(points, degree: int, X: NodeSet) -> bool:
    return is_gc_at_degree(X.subset(points, degree))


def _poised_at(points, degree: int, X: NodeSet) -> bool:
    sub = X.subset(points, degree)
    if degree < 0:
        return len(sub) == 0
    return is_poised(sub)


# ------------------------------------------------------------------ claims

def verify_theorem_corrected(X: NodeSet) -> Verdict:
    """n-node lines are used by C(n,2) or C(n-1,2) nodes, with the case iff-conditions (n != 3)."""
    n = X.n
    t = _Tally("thm-corrected")
    if n == 3:
        return Verdict(t.claim, SKIPPED, detail="not valid for n = 3; see prop-n3")
    hi, lo = binom2(n), binom2(n - 1)
    for ell in n_node_lines(X):
        t.checked += 1
        rep = usage_report(X, ell)
        xl = _as_set(rep.usage_set)
        v = len(xl)
        w = _line_witness(ell, X, rep.usage_set)
        t.check(v in (hi, lo), f"|X_l| = {v} not in {{{hi}, {lo}}}", **w)
        has_i, has_ii = bool(rep.case_i_witnesses), bool(rep.case_ii_witnesses)
        t.check((v == hi) == has_i, f"|X_l| = C(n,2) iff case I broken (|X_l| = {v}, case I: {has_i})", **w)
        t.check((v == lo) == has_ii, f"|X_l| = C(n-1,2) iff case II broken (|X_l| = {v}, case II: {has_ii})", **w)
        if v == hi and has_i:
            for m0 in rep.case_i_witnesses:
                t.check(xl == _off(X, [ell, m0]), "X_l != X minus (l and M0)", **w, m0=str(m0))
            t.check(_gc_at(xl, n - 2, X), "X_l is not GC_{n-2}", **w)
        if v == lo and has_ii:
            for m1, m2 in rep.case_ii_witnesses:
                t.check(xl == _off(X, [ell, m1, m2]), "X_l != X minus (l, M', M'')", **w,
                        pair=[str(m1), str(m2)])
            t.check(_gc_at(xl, n - 3, X), "X_l is not GC_{n-3}", **w)
    return t.verdict(f"no {n}-node lines", conditional=n > GM_PROVED_UP_TO)


def verify_prop_n3(X: NodeSet) -> Verdict:
    """3-node lines of GC_3 sets: usage 3, 1 or 0, with the three-way classification."""
    t = _Tally("prop-n3")
    if X.n != 3:
        return Verdict(t.claim, SKIPPED, detail="applies to n = 3 only")
    ms = maximal_lines(X)
    mu = len(ms)
    for ell in k_node_lines(X, 3):
        t.checked += 1
        rep = usage_report(X, ell)
        xl = _as_set(rep.usage_set)
        v = len(xl)
        w = _line_witness(ell, X, rep.usage_set)
        has_i, has_ii = bool(rep.case_i_witnesses), bool(rep.case_ii_witnesses)
        t.check(v in (3, 1, 0), f"|X_l| = {v} not in {{3, 1, 0}}", **w)
        t.check((v == 3) == has_i, f"case (i) iff broken (|X_l| = {v})", **w)
        if v == 3 and has_i:
            m0 = rep.case_i_witnesses[0]
            t.check(xl == _off(X, [ell, m0]), "X_l != X minus (l and M0)", **w)
            t.check(_gc_at(xl, 1, X), "X_l is not GC_1", **w)
            for m in ms:
                if m == m0:
                    continue
                meets = any(m.contains(p) for p in nodes_on(X, ell))
                t.check(meets, "another maximal line misses l", **w, m=str(m))
                t.check(sum(1 for p in xl if m.contains(p)) == 2, "|M cap X_l| != 2", **w, m=str(m))
        t.check((v == 1) == has_ii, f"case (ii) iff broken (|X_l| = {v})", **w)
        if v == 1 and has_ii:
            m1, m2 = rep.case_ii_witnesses[0]
            t.check(xl == _off(X, [ell, m1, m2]), "X_l != X minus (l, M', M'')", **w)
        distinct = len({m.intersect(ell) for m in ms if not m.is_parallel(ell)} & set(nodes_on(X, ell)))
        three_distinct = mu == 3 and distinct == 3
        t.check((v == 0) == three_distinct, f"case (iii) iff broken (|X_l| = {v}, mu = {mu})", **w)
        if mu == 3:
            t.check(v in (3, 0), f"mu = 3 but |X_l| = {v}", **w)
    return t.verdict("no 3-node lines")


def _all_nodes_on_maximals(X: NodeSet, ell: LinearForm, ms: Sequence[LinearForm]) -> bool:
    pts = nodes_on(X, ell)
    return all(any(m.contains(p) for m in ms if m != ell) for p in pts)


def verify_prop_nmaximals(X: NodeSet) -> Verdict:
    """n maximal lines through the n nodes of an n-node line force another maximal line."""
    t = _Tally("prop-nmaximals")
    n = X.n
    if n == 3:
        return Verdict(t.claim, SKIPPED, detail="not valid for n = 3 (the unused line of X* is a counterexample)")
    ms = maximal_lines(X)
    for ell in n_node_lines(X):
        if not _all_nodes_on_maximals(X, ell, ms):
            continue
        t.checked += 1
        t.check(len(ms) >= n + 1, f"only {len(ms)} maximal lines", **_line_witness(ell, X))
    return t.verdict("no n-node line meets n maximal lines at distinct nodes")


def verify_cor_nor(X: NodeSet) -> Verdict:
    """Other maximal lines meet X_l in n-1 (case I) or n-2 (case II) nodes."""
    t = _Tally("cor-nor")
    n = X.n
    ms = maximal_lines(X)
    for ell in n_node_lines(X):
        rep = usage_report(X, ell)
        xl = _as_set(rep.usage_set)
        w = _line_witness(ell, X, rep.usage_set)
        for m0 in rep.case_i_witnesses:
            t.checked += 1
            for m in ms:
                if m != m0:
                    c = sum(1 for p in xl if m.contains(p))
                    t.check(c == n - 1, f"case I: |M cap X_l| = {c} != {n - 1}", **w, m=str(m))
        if n == 1:
            # at n = 1 both cases hold at once and the case-II count n - 2 = -1 is meaningless
            continue
        for m1, m2 in rep.case_ii_witnesses:
            t.checked += 1
            for m in ms:
                if m not in (m1, m2):
                    c = sum(1 for p in xl if m.contains(p))
                    t.check(c == n - 2, f"case II: |M cap X_l| = {c} != {n - 2}", **w, m=str(m))
    return t.verdict("no n-node line in case I or II")


def verify_prop_linennp(X: NodeSet) -> Verdict:
    """Gaps in the possible values of |X_l| for n-node lines of an n-poised set, and the conic."""
    t = _Tally("prop-linennp")
    n = X.n
    hi, mid, lo = binom2(n), binom2(n - 1), binom2(n - 2)
    ms = maximal_lines(X)
    for ell in n_node_lines(X):
        t.checked += 1
        xl_list = usage_set(X, ell)
        xl = _as_set(xl_list)
        v = len(xl)
        w = _line_witness(ell, X, xl_list)
        t.check(v <= hi, f"(i) |X_l| = {v} > C(n,2) = {hi}", **w)
        t.check(not (mid < v < hi), f"|X_l| = {v} in the forbidden band ({mid}, {hi})", **w)
        t.check(not (lo + 1 < v < mid), f"|X_l| = {v} in the forbidden band ({lo + 1}, {mid})", **w)
        if v >= mid + 1:
            t.check(v == hi, f"(ii) |X_l| = {v} != C(n,2)", **w)
            t.check(_poised_at(xl, n - 2, X), "(ii) X_l not (n-2)-poised", **w)
            on_ell = nodes_on(X, ell)
            ok = any(
                not any(m.contains(p) for p in on_ell) and xl == _off(X, [ell, m])
                for m in ms if m != ell
            )
            t.check(ok, "(ii) no maximal M with X_l = X minus (l and M)", **w)
        elif lo + 2 <= v <= mid:
            t.check(v == mid, f"(iii) |X_l| = {v} != C(n-1,2)", **w)
            t.check(_poised_at(xl, n - 3, X), "(iii) X_l not (n-3)-poised", **w)
            _check_conic(t, X, ell, xl, w)
    return t.verdict(f"no {n}-node lines")


def _check_conic(t: _Tally, X: NodeSet, ell: LinearForm, xl: frozenset, w: dict):
    n = X.n
    nl = [p for p in X.nodes if p not in xl and not ell.contains(p)]
    t.check(len(nl) == 2 * n, f"(iii) |N_l| = {len(nl)} != 2n", **w)
    beta = conic_through(nl)
    if not t.check(beta is not None, "(iii) N_l lies on no conic", **w):
        return
    on_beta = [p for p in X.nodes if beta(p) == 0]
    t.check(set(p for p in on_beta if not ell.contains(p)) == set(nl), "(iii) N_l != (beta minus l) cap X", **w)
    extra = [p for p in on_beta if p not in set(nl)]
    t.check(len(extra) <= 1 and all(ell.contains(p) for p in extra), "(iii) extra nodes on the conic", **w)
    idx = build_index(NodeSet(n, tuple(nl)) if nl else X)
    split = split_conic(beta, idx.lines)
    if split is not None:
        for part in split:
            c = sum(1 for p in X.nodes if part.contains(p) and not ell.contains(p))
            t.check(c == n, f"(iii) split conic line carries {c} != n nodes off l", **w, part=str(part))


def verify_structural(X: NodeSet) -> Verdict:
    """Maximal-line structure and its behaviour under removal of a maximal line."""
    t = _Tally("structural")
    n = X.n
    ms = maximal_lines(X)
    mu = len(ms)
    t.checked += 1
    t.check(3 <= mu <= n + 2, f"mu = {mu} outside [3, n+2]")
    st = check_maximal_structure(X)
    for a, b in st.non_node_meets:
        t.check(False, "two maximal lines do not meet at a node", lines=[str(a), str(b)])
    for tri in st.concurrent_triples:
        t.check(False, "three concurrent maximal lines", lines=[str(m) for m in tri])
    for k, A in enumerate(X.nodes):
        t.check(any(A in usage_set(X, m) for m in ms), "node uses no maximal line", node=k)
    if n >= 2:
        lines = build_index(X).lines
        for m in ms:
            R = residual_set(X, [m])
            t.check(is_gc_at_degree(R), "X minus M is not GC_{n-1}", m=str(m))
            mu_r = len(maximal_lines(R))
            t.check(mu_r in (mu, mu - 1), f"mu(X minus M) = {mu_r}, mu(X) = {mu}", m=str(m))
            if mu == 3:
                t.check(mu_r == 3, f"mu(X) = 3 but mu(X minus M) = {mu_r}", m=str(m))
            if not is_poised(R):
                continue
            for A in R.nodes:
                scaled = mul_linear(fundamental_polynomial(R, A), m).scale(1 / m(A))
                t.check(fundamental_polynomial(X, A) == scaled, "p*_{A,X} != M p*_{A,X minus M} (M normalised at A)",
                        m=str(m), node=X.index(A))
            for ell in lines:
                if ell == m:
                    continue
                lhs = {p for p in usage_set(X, ell) if not m.contains(p)}
                t.check(lhs == set(usage_set(R, ell)), "X_l minus M != (X minus M)_l",
                        m=str(m), **_line_witness(ell, X))
    t.notes.append(f"mu = {mu}")
    return t.verdict(conditional=n > GM_PROVED_UP_TO)


def verify_cor_lastcrl(X: NodeSet) -> Verdict:
    """With exactly three maximal lines and n >= 4: three n-node lines, each used by C(n,2) nodes."""
    t = _Tally("cor-lastcrl")
    n = X.n
    ms = maximal_lines(X)
    if n < 4 or len(ms) != 3:
        return Verdict(t.claim, SKIPPED, detail=f"needs n >= 4 and mu = 3 (n = {n}, mu = {len(ms)})")
    lines = k_node_lines(X, n)
    t.checked += 1
    t.check(len(lines) == 3, f"{len(lines)} n-node lines instead of 3", lines=[str(ell) for ell in lines])
    vertices = {a.intersect(b) for i, a in enumerate(ms) for b in ms[i + 1:]}
    for ell in lines:
        rep = usage_report(X, ell)
        w = _line_witness(ell, X, rep.usage_set)
        t.check(len(rep.usage_set) == binom2(n), f"|X_l| = {len(rep.usage_set)} != C(n,2)", **w)
        t.check(not any(ell.contains(v) for v in vertices), "n-node line through a vertex", **w)
        t.check(bool(rep.case_i_witnesses), "no maximal M0 with M0 cap l cap X empty", **w)
    return t.verdict(conditional=n > GM_PROVED_UP_TO)


def verify_thm_nell(X: NodeSet) -> Verdict:
    """N_l is (n-1)-dependent and none of its nodes has an (n-1)-fundamental polynomial in N_l."""
    t = _Tally("thm-nell")
    idx = build_index(X)
    for ell in idx.lines:
        if idx.count(ell) > X.n:
            continue
        res = verify_nell(X, ell)
        if not res.non_usage_set:
            continue
        t.checked += 1
        w = _line_witness(ell, X)
        w["non_usage_set"] = sorted(X.index(p) for p in res.non_usage_set)
        t.check(res.dependent, "N_l is (n-1)-independent", **w)
        t.check(not res.nodes_with_fundamental, "a node of N_l has an (n-1)-fundamental polynomial",
                nodes=[X.index(p) for p in res.nodes_with_fundamental], **w)
    return t.verdict("every line with at most n nodes has empty N_l")


# claim id -> (verifier, needs GC)
VERIFIERS: Dict[str, tuple] = {
    "thm-corrected": (verify_theorem_corrected, True),
    "prop-n3": (verify_prop_n3, True),
    "prop-nmaximals": (verify_prop_nmaximals, True),
    "cor-nor": (verify_cor_nor, True),
    "prop-linennp": (verify_prop_linennp, False),
    "structural": (verify_structural, True),
    "cor-lastcrl": (verify_cor_lastcrl, True),
    "thm-nell": (verify_thm_nell, False),
}
CLAIMS = ("poised", "gc") + tuple(VERIFIERS)


def run_suite(X: NodeSet, claims: Optional[Iterable[str]] = None) -> List[Verdict]:
    selected = list(VERIFIERS) if claims is None else [c for c in claims if c not in ("poised", "gc")]
    unknown = [c for c in selected if c not in VERIFIERS]
    if unknown:
        raise KeyError(f"unknown claim id(s): {', '.join(unknown)}")
    out = []
    if not is_poised(X):
        out.append(Verdict("poised", FAIL, [{"check": "vandermonde rank deficient", "size": len(X)}],
                           f"{len(X)} nodes are not {X.n}-poised", 1))
        out.extend(Verdict(c, SKIPPED, detail="input not poised") for c in selected)
        return out
    out.append(Verdict("poised", PASS, detail=f"{len(X)} nodes, degree {X.n}", checked=1))
    gc = is_gc_set(X)
    if gc:
        out.append(Verdict("gc", PASS, detail=f"every node factors into {X.n} lines", checked=len(X)))
    else:
        first = X.index(gc.failing_nodes[0])
        out.append(Verdict("gc", SKIPPED, [{"node": first}],
                           f"not a GC set: node {first} does not factor; GC-only claims skipped"))
    for claim in selected:
        fn, needs_gc = VERIFIERS[claim]
        if needs_gc and not gc:
            out.append(Verdict(claim, SKIPPED, detail="input is not a GC set"))
        else:
            out.append(fn(X))
    return out


def suite_failed(verdicts: Iterable[Verdict]) -> bool:
    return any(v.failed for v in verdicts)
