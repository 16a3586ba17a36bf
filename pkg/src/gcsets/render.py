"""Vector figures of node sets: nodes, maximal lines, n-node lines, unused lines."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import usage_set  # noqa: E402
from .exact import LinearForm  # noqa: E402
from .incidence import k_node_lines, maximal_lines  # noqa: E402
from .interpolation import is_poised  # noqa: E402
from .lattices import LabeledNodeSet  # noqa: E402

ROLE_COLORS = {
    "vertex": "#1f4e79",
    "free": "#2e7d32",
    "outside": "#b71c1c",
    "primary": "#1f4e79",
    "intersection": "#1f4e79",
    "additional": "#2e7d32",
}


def _bounds(L: LabeledNodeSet) -> Tuple[float, float, float, float]:
    xs = [float(p.x) for p in L.nodes]
    ys = [float(p.y) for p in L.nodes]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = 0.15 * max(x1 - x0, y1 - y0, 1.0)
    return x0 - pad, x1 + pad, y0 - pad, y1 + pad


def _segment(ell: LinearForm, box) -> Optional[List[Tuple[float, float]]]:
    # clip a*x + b*y + c = 0 to the box, exactly, then convert
    x0, x1, y0, y1 = (Fraction(v) for v in box)
    pts = []
    if ell.b:
        for x in (x0, x1):
            y = -(ell.a * x + ell.c) / ell.b
            if y0 <= y <= y1:
                pts.append((x, y))
    if ell.a:
        for y in (y0, y1):
            x = -(ell.b * y + ell.c) / ell.a
            if x0 <= x <= x1:
                pts.append((x, y))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return [(float(pts[0][0]), float(pts[0][1])), (float(pts[-1][0]), float(pts[-1][1]))]


def classify_lines(L: LabeledNodeSet):
    """(maximal, n-node used by someone, n-node unused) for a poised set."""
    X = L.node_set
    if len(X) == 0 or X.n < 1:
        return [], [], []
    maximal = maximal_lines(X)
    nlines = k_node_lines(X, X.n) if X.n >= 2 else []
    if not is_poised(X):
        return maximal, nlines, []
    used = [ell for ell in nlines if usage_set(X, ell)]
    unused = [ell for ell in nlines if ell not in used]
    return maximal, used, unused


def render(L: LabeledNodeSet, path, title: Optional[str] = None) -> Path:
    path = Path(path)
    plt.rcParams["svg.hashsalt"] = "gcsets"
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.set_aspect("equal")
    ax.axis("off")
    if len(L.node_set):
        box = _bounds(L)
        ax.set_xlim(box[0], box[1])
        ax.set_ylim(box[2], box[3])
        maximal, used, unused = classify_lines(L)
        names = {ell: name for name, ell in L.lines}
        for group, style in ((maximal, dict(color="black", lw=1.4, ls="-")),
                             (used, dict(color="#555555", lw=1.0, ls="--")),
                             (unused, dict(color="#d32f2f", lw=2.0, ls="--"))):
            for ell in group:
                seg = _segment(ell, box)
                if seg is None:
                    continue
                (ax_, ay), (bx, by) = seg
                ax.plot([ax_, bx], [ay, by], **style)
                if ell in names:
                    ax.annotate(names[ell], (bx, by), fontsize=8, color=style["color"],
                                xytext=(3, 3), textcoords="offset points")
        for k, p in enumerate(L.nodes):
            role = L.labels[k]
            ax.plot(float(p.x), float(p.y), "o", ms=5, color=ROLE_COLORS.get(role, "black"))
            label = L.names[k] if L.names else role
            ax.annotate(label, (float(p.x), float(p.y)), fontsize=7, xytext=(4, -9), textcoords="offset points")
    if title:
        ax.set_title(title, fontsize=10)
    path.parent.mkdir(parents=True, exist_ok=True)
    fmt = path.suffix.lstrip(".") or "svg"
    fig.savefig(path, format=fmt, metadata={"Date": None} if fmt == "svg" else None, bbox_inches="tight")
    plt.close(fig)
    return path
