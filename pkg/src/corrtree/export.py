"""Deterministic text serializations of trees, dendrograms and matrices.

Every function maps equal inputs to byte-identical output: fixed element
order, fixed float formatting, "\\n" line endings. Graph labels carry
4-decimal weights for readability; CSV cells keep full precision via
``repr`` so values round-trip exactly.
"""

from __future__ import annotations

import csv
import io
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .dynamics import TreeSequence
from .hierarchy import Dendrogram
from .mst import SpanningTree


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(tree: SpanningTree) -> str:
    """Undirected DOT graph: nodes sorted by label, edges in construction order."""
    lines = ["graph mst {"]
    for label in sorted(tree.assets):
        lines.append(f"  {_dot_quote(label)};")
    for e in tree.edges:
        lines.append(
            f"  {_dot_quote(e.a)} -- {_dot_quote(e.b)} [label=\"{e.weight:.4f}\"];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graphml(tree: SpanningTree) -> str:
    """GraphML with a double-typed edge weight attribute, full precision."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="w" for="edge" attr.name="weight" attr.type="double"/>',
        '  <graph id="mst" edgedefault="undirected">',
    ]
    for label in sorted(tree.assets):
        lines.append(f"    <node id={quoteattr(label)}/>")
    for e in tree.edges:
        lines.append(f"    <edge source={quoteattr(e.a)} target={quoteattr(e.b)}>")
        lines.append(f'      <data key="w">{escape(repr(float(e.weight)))}</data>')
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


_NEWICK_UNSAFE = set(" \t\n(),:;'[]")


def _newick_label(label: str) -> str:
    if label and not _NEWICK_UNSAFE.intersection(label):
        return label
    return "'" + label.replace("'", "''") + "'"


def export_newick(dendrogram: Dendrogram) -> str:
    """Rooted Newick string with ultrametric branch lengths.

    A cluster merged at height h sits at depth h/2, so the leaf-to-leaf
    path length through the tree equals the cophenetic distance. The
    root carries length 0.
    """
    n = dendrogram.n_leaves
    text: dict[int, str] = {i: _newick_label(lab) for i, lab in enumerate(dendrogram.leaves)}
    height: dict[int, float] = {i: 0.0 for i in range(n)}
    for k, m in enumerate(dendrogram.merges):
        parts = []
        for child in (m.left, m.right):
            length = (m.height - height.pop(child)) / 2.0
            parts.append(f"{text.pop(child)}:{repr(float(length))}")
        node = n + k
        text[node] = "(" + ",".join(parts) + ")"
        height[node] = m.height
    (root,) = text
    return text[root] + ":0.0;\n"


def matrix_csv(labels: Sequence[str], values: np.ndarray) -> str:
    """Square matrix as CSV with a label header row and column."""
    values = np.asarray(values)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + list(labels))
    for label, row in zip(labels, values):
        writer.writerow([label] + [repr(float(v)) for v in row])
    return buffer.getvalue()


def survival_csv(sequence: TreeSequence) -> str:
    """Per-window survival series; the first window has no predecessor."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["window_index", "start", "end", "survival_vs_previous"])
    survival = sequence.survival_vs_previous()
    for k, ((start, end), s) in enumerate(zip(sequence.windows, survival)):
        writer.writerow([k, start, end, "" if s is None else repr(float(s))])
    return buffer.getvalue()
