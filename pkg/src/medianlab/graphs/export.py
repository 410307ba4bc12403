from __future__ import annotations

from pathlib import Path
from typing import Collection, Mapping

from .graph import Graph
from .theta import ThetaStructure


GRID_PALETTE = ("gray40", "gray55", "gray70")
CLASS_PALETTE = (
    "firebrick",
    "darkorange",
    "gold3",
    "forestgreen",
    "dodgerblue3",
    "purple3",
    "deeppink3",
    "sienna",
    "turquoise4",
    "olivedrab",
)


def to_dot(
    graph: Graph,
    theta: ThetaStructure | None = None,
    labels: Mapping[int, str] | None = None,
    *,
    class_names: Mapping[int, str] | None = None,
    highlight: Collection[int] = (),
    name: str = "G",
) -> str:
    """DOT text for a graph; with Θ each edge is labelled by its class and coloured per class.

    Classes listed in `highlight` draw from the bright palette and are drawn bold;
    all other classes cycle through greys.
    """
    labels = labels or {}
    class_names = class_names or {}
    highlighted = set(highlight)
    lines = [f"graph {name} {{", "  node [shape=circle fontsize=9];", "  edge [fontsize=8];"]
    for vertex in graph.vertices:
        attrs = []
        if vertex in labels:
            attrs.append(f'label="{_escape(labels[vertex])}"')
        elif vertex in graph.coords:
            coord = ",".join(str(c) for c in graph.coords[vertex])
            attrs.append(f'label="{vertex}\\n({coord})"')
        if theta is not None and vertex == theta.basepoint:
            attrs.append("shape=doublecircle")
        suffix = f" [{' '.join(attrs)}]" if attrs else ""
        lines.append(f"  {vertex}{suffix};")
    for u, v in graph.edges:
        if theta is None:
            lines.append(f"  {u} -- {v};")
            continue
        cls = theta.class_of[(u, v)]
        text = class_names.get(cls, str(cls))
        color = _class_color(cls, highlighted)
        bold = " penwidth=2" if cls in highlighted else ""
        lines.append(f'  {u} -- {v} [label="{_escape(text)}" color={color}{bold}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _class_color(cls: int, highlighted: set[int]) -> str:
    if not highlighted or cls in highlighted:
        return CLASS_PALETTE[cls % len(CLASS_PALETTE)]
    return GRID_PALETTE[cls % len(GRID_PALETTE)]


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
