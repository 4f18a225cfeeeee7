"""Graphviz DOT rendering."""

from __future__ import annotations

from .network import Network, format_cluster, natural_key, redundant_arcs


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(net: Network, name: str = "network") -> str:
    """Nodes in vertex-id order labelled ``label {cluster}``; arcs sorted; redundant arcs dashed."""
    lab = net.labels
    dashed = redundant_arcs(net)
    lines = [f"digraph {_quote(name)} {{"]
    for v in range(len(net)):
        text = f"{lab[v]} {format_cluster(net.clusters[v], net.taxa)}"
        lines.append(f"  {_quote(lab[v])} [label={_quote(text)}];")
    for u, v in sorted(net.arcs, key=lambda e: (natural_key(lab[e[0]]), natural_key(lab[e[1]]))):
        style = " [style=dashed]" if (u, v) in dashed else ""
        lines.append(f"  {_quote(lab[u])} -> {_quote(lab[v])}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
