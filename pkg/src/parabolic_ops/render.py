"""Graphviz DOT output for Hasse graphs."""

from __future__ import annotations

from .classifier import HasseGraph


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_to_dot(g: HasseGraph) -> str:
    """Render a Hasse graph as a DOT digraph.

    Node ids follow the canonical vertex order; constructed edges are solid,
    the rest dashed.
    """
    datum = g.report.datum
    crossed = ",".join(map(str, g.report.parabolic.crossed))
    lines = [f"digraph {_quote(f'{datum.name} crossed {crossed}')} {{", "  rankdir=LR;"]
    for i, v in enumerate(g.vertices):
        lines.append(f"  v{i} [label={_quote(str(v.weight))}, length={v.length}];")
    for e in g.edges:
        style = "solid" if e.constructed else "dashed"
        label = datum.root_name(e.label) + (f" ({e.order})" if e.order > 1 else "")
        lines.append(f"  v{e.source} -> v{e.target} [label={_quote(label)}, style={style}];")
    lines.append("}")
    return "\n".join(lines)
