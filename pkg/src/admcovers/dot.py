"""DOT rendering of dual graphs.

Components become vertices labeled `id:g=genus`, nodes become edges.
When the curve is the source of a cover, each edge carries the pair of
ramification indices at its two branches.
"""

from __future__ import annotations

from .covers import CoverMap
from .curves import CurveGraph


def export_dot(curve: CurveGraph, cover: CoverMap | None = None) -> str:
    """The dual graph in DOT syntax, one line per vertex and edge, in
    curve order.  With a cover, the curve must be its source."""
    lines = ["graph dual {"]
    for comp in curve.components:
        lines.append(f'  "{comp.cid}" [label="{comp.cid}:g={comp.genus}"];')
    for node in curve.nodes:
        (ca, pa), (cb, pb) = node.branches
        label = node.nid
        if cover is not None:
            label += f" ({cover.index_of(pa)},{cover.index_of(pb)})"
        lines.append(f'  "{ca}" -- "{cb}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
