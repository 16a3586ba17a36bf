"""Node-set files (versioned JSON) and verdict streams."""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List

from .exact import LinearForm, Point, format_rational
from .interpolation import NodeSet
from .lattices import LabeledNodeSet

SCHEMA = "gcsets/nodeset/1"


class NodeSetFormatError(ValueError):
    """A node-set file could not be parsed; the message names the location."""


def _rat(text, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise NodeSetFormatError(f"{where}: expected a rational string like \"3/4\", got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise NodeSetFormatError(f"{where}: {text!r} is not a rational number") from None


def to_document(L: LabeledNodeSet) -> dict:
    doc = {
        "schema": SCHEMA,
        "n": L.n,
        "nodes": [[format_rational(p.x), format_rational(p.y)] for p in L.nodes],
        "labels": list(L.labels),
    }
    if L.names:
        doc["names"] = list(L.names)
    if L.lines:
        doc["lines"] = [{"name": name, "form": [format_rational(v) for v in ell.triple()]} for name, ell in L.lines]
    if L.provenance:
        doc["provenance"] = L.provenance
    return doc


def dumps(L: LabeledNodeSet) -> str:
    return json.dumps(to_document(L), indent=2, sort_keys=True) + "\n"


def from_document(doc) -> LabeledNodeSet:
    if not isinstance(doc, dict):
        raise NodeSetFormatError("$: expected a JSON object")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise NodeSetFormatError(f"$.schema: expected {SCHEMA!r}, got {schema!r}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise NodeSetFormatError(f"$.n: expected an integer, got {n!r}")
    raw = doc.get("nodes")
    if not isinstance(raw, list):
        raise NodeSetFormatError("$.nodes: expected a list of [x, y] pairs")
    nodes = []
    for i, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise NodeSetFormatError(f"$.nodes[{i}]: expected a pair [x, y]")
        nodes.append(Point(_rat(pair[0], f"$.nodes[{i}][0]"), _rat(pair[1], f"$.nodes[{i}][1]")))
    labels = doc.get("labels", ["node"] * len(nodes))
    names = doc.get("names", [])
    for key, seq in (("labels", labels), ("names", names)):
        if not isinstance(seq, list) or not all(isinstance(s, str) for s in seq):
            raise NodeSetFormatError(f"$.{key}: expected a list of strings")
        if seq and len(seq) != len(nodes):
            raise NodeSetFormatError(f"$.{key}: {len(seq)} entries for {len(nodes)} nodes")
    lines = []
    for i, entry in enumerate(doc.get("lines", [])):
        where = f"$.lines[{i}]"
        if not isinstance(entry, dict) or "form" not in entry or len(entry["form"]) != 3:
            raise NodeSetFormatError(f"{where}: expected {{\"name\": ..., \"form\": [a, b, c]}}")
        a, b, c = (_rat(v, f"{where}.form[{k}]") for k, v in enumerate(entry["form"]))
        try:
            lines.append((str(entry.get("name", f"line{i}")), LinearForm(a, b, c)))
        except ValueError as exc:
            raise NodeSetFormatError(f"{where}: {exc}") from None
    provenance = doc.get("provenance", {})
    if not isinstance(provenance, dict):
        raise NodeSetFormatError("$.provenance: expected an object")
    try:
        X = NodeSet(n, tuple(nodes))
    except ValueError as exc:
        raise NodeSetFormatError(f"$.nodes: {exc}") from None
    return LabeledNodeSet(X, tuple(labels), tuple(names), tuple(lines), dict(provenance))


def loads(text: str, source: str = "<string>") -> LabeledNodeSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NodeSetFormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return from_document(doc)
    except NodeSetFormatError as exc:
        raise NodeSetFormatError(f"{source}: {exc}") from None


def read_node_set(path) -> LabeledNodeSet:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), str(path))


def write_atomic(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_node_set(path, L: LabeledNodeSet) -> Path:
    return write_atomic(path, dumps(L))


def plain(X: NodeSet, provenance: dict | None = None) -> LabeledNodeSet:
    return LabeledNodeSet(X, ("node",) * len(X), (), (), dict(provenance or {}))


# ---------------------------------------------------------------- verdicts

def verdict_record(v, source: str = "") -> dict:
    rec = {
        "claim": v.claim,
        "status": v.status,
        "checked": v.checked,
        "detail": v.detail,
        "conditional": v.conditional,
        "witnesses": v.witnesses,
    }
    if source:
        rec["source"] = source
    return rec


def verdict_lines(verdicts: Iterable, source: str = "") -> List[str]:
    return [json.dumps(verdict_record(v, source), sort_keys=True, default=str) for v in verdicts]


def summary_table(verdicts: Iterable) -> str:
    verdicts = list(verdicts)
    rows = [("claim", "status", "checked", "detail")]
    for v in verdicts:
        status = v.status + (" (conditional)" if v.conditional else "")
        rows.append((v.claim, status, str(v.checked), v.detail))
    widths = [max(len(r[k]) for r in rows) for k in range(3)]
    out = []
    for i, r in enumerate(rows):
        out.append("  ".join(r[k].ljust(widths[k]) for k in range(3)) + "  " + r[3])
        if i == 0:
            out.append("  ".join("-" * w for w in widths) + "  " + "-" * 6)
    counts = {}
    for v in verdicts:
        counts[v.status] = counts.get(v.status, 0) + 1
    out.append("totals: " + ", ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    return "\n".join(out)
