"""Hasse diagrams over clone-like nodes.

Nodes only need a ``members`` frozenset of mutually comparable elements and
a ``generators`` tuple used for labels; both the monomial-clone and the
linear-clone lattices reuse this machinery.  Edges are the covering
relation of member-set inclusion, recomputed by transitive reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .errors import MonocloneError


def node_label(node) -> str:
    gens = sorted(node.generators, key=lambda g: getattr(g, "display_key", g))
    return ", ".join(str(g) for g in gens)


@dataclass(frozen=True)
class HasseDiagram:
    nodes: tuple[Any, ...]
    edges: frozenset[tuple[int, int]]
    bottom: int
    top: int
    complete: bool
    chain_witness: tuple = ()

    def labels(self) -> list[str]:
        return [node_label(n) for n in self.nodes]

    def node_count(self) -> int:
        return len(self.nodes)

    def covers_of(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.edges if a == i)

    def below(self, i: int, j: int) -> bool:
        return self.nodes[i].members <= self.nodes[j].members


def _canonical_order(nodes: Sequence) -> list:
    return sorted(nodes, key=lambda n: (len(n.members), sorted(n.members)))


def build_diagram(nodes: Sequence, complete: bool,
                  chain_witness: tuple = ()) -> HasseDiagram:
    """Deduplicate nodes by member set, order canonically, and compute the
    covering relation, bottom, and top."""
    unique: dict[frozenset, Any] = {}
    for node in nodes:
        unique.setdefault(node.members, node)
    ordered = _canonical_order(unique.values())
    n = len(ordered)
    below = [[ordered[i].members < ordered[j].members for j in range(n)]
             for i in range(n)]
    edges = set()
    for i in range(n):
        for j in range(n):
            if below[i][j] and not any(below[i][k] and below[k][j]
                                       for k in range(n)):
                edges.add((i, j))
    bottoms = [i for i in range(n)
               if all(i == j or below[i][j] for j in range(n))]
    tops = [j for j in range(n)
            if all(i == j or below[i][j] for i in range(n))]
    if not bottoms or not tops:
        raise MonocloneError("node set has no bottom or no top element")
    return HasseDiagram(nodes=tuple(ordered), edges=frozenset(edges),
                        bottom=bottoms[0], top=tops[0], complete=complete,
                        chain_witness=chain_witness)


def diagram_to_dot(diagram: HasseDiagram, name: str = "lattice") -> str:
    """DOT rendering with covering edges pointing upward."""
    lines = [f"digraph {name} {{", "    rankdir=BT;",
             "    node [shape=box];"]
    for i, node in enumerate(diagram.nodes):
        label = node_label(node).replace('"', r'\"')
        lines.append(f'    n{i} [label="<{label}>"];')
    for i, j in sorted(diagram.edges):
        lines.append(f"    n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_to_json(diagram: HasseDiagram,
                    member_encoder: Callable[[Any], Any]) -> dict:
    return {
        "complete": diagram.complete,
        "bottom": diagram.bottom,
        "top": diagram.top,
        "nodes": [
            {
                "label": node_label(node),
                "generators": [member_encoder(g) for g in sorted(node.generators)],
                "size": len(node.members),
                "stable": getattr(node, "stable", True),
            }
            for node in diagram.nodes
        ],
        "edges": sorted([i, j] for (i, j) in diagram.edges),
        "chain_witness": [str(m) for m in diagram.chain_witness],
    }
