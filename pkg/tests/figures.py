"""Expected small-field lattices, keyed by generator expressions.

Node identity is resolved through the engine: a fixture node maps to the
enumerated node whose member set equals the closure of the fixture's
generators, so the comparison never depends on which labels the greedy
labeler happened to choose.
"""

from monoclone.engine import generate
from monoclone.monomials import parse_monomial

# 2 nodes, 1 edge
FIG_Q2_NODES = ["x1", "x1*x2"]
FIG_Q2_EDGES = [("x1", "x1*x2")]

# 7 nodes, 8 edges
FIG_Q3_NODES = [
    "x1", "x1^2", "x1^2*x2^2", "x1*x2^2", "x1^2, x1*x2^2",
    "x1*x2*x3", "x1*x2",
]
FIG_Q3_EDGES = [
    ("x1", "x1^2"),
    ("x1", "x1*x2^2"),
    ("x1^2", "x1^2*x2^2"),
    ("x1^2*x2^2", "x1^2, x1*x2^2"),
    ("x1*x2^2", "x1^2, x1*x2^2"),
    ("x1*x2^2", "x1*x2*x3"),
    ("x1^2, x1*x2^2", "x1*x2"),
    ("x1*x2*x3", "x1*x2"),
]

# 12 nodes, 18 edges
FIG_Q4_NODES = [
    "x1", "x1*x2^3", "x1^2", "x1^3", "x1^2*x2^3", "x1^2, x1^3",
    "x1*x2*x3*x4", "x1^3*x2^3", "x1*x2^3, x1^3*x2^3",
    "x1^2, x1^3*x2^3", "x1^2*x2^3, x1^3*x2^3", "x1*x2",
]
FIG_Q4_EDGES = [
    ("x1", "x1*x2^3"),
    ("x1*x2^3", "x1^2*x2^3"),
    ("x1^2", "x1^2, x1^3"),
    ("x1^2, x1^3", "x1^2, x1^3*x2^3"),
    ("x1*x2^3", "x1*x2^3, x1^3*x2^3"),
    ("x1^3", "x1^3*x2^3"),
    ("x1^3*x2^3", "x1^2, x1^3*x2^3"),
    ("x1^2, x1^3*x2^3", "x1^2*x2^3, x1^3*x2^3"),
    ("x1^3*x2^3", "x1*x2^3, x1^3*x2^3"),
    ("x1*x2^3, x1^3*x2^3", "x1^2*x2^3, x1^3*x2^3"),
    ("x1", "x1^2"),
    ("x1^2", "x1^2*x2^3"),
    ("x1^2*x2^3", "x1^2*x2^3, x1^3*x2^3"),
    ("x1^2*x2^3, x1^3*x2^3", "x1*x2"),
    ("x1*x2^3", "x1*x2*x3*x4"),
    ("x1*x2*x3*x4", "x1*x2"),
    ("x1", "x1^3"),
    ("x1^3", "x1^2, x1^3"),
]

# 4 nodes, 4 edges (forms over Z_2)
FIG_SA2_NODES = ["y1", "0", "y1+y2+y3", "y1+y2"]
FIG_SA2_EDGES = [
    ("y1", "y1+y2+y3"),
    ("y1+y2+y3", "y1+y2"),
    ("y1", "0"),
    ("0", "y1+y2"),
]

# 6 nodes, 7 edges (forms over Z_3)
FIG_SA3_NODES = ["y1", "0", "2*y1", "0, 2*y1",
                 "y1+y2+y3+y4", "y1+y2"]
FIG_SA3_EDGES = [
    ("y1", "y1+y2+y3+y4"),
    ("y1+y2+y3+y4", "y1+y2"),
    ("y1", "0"),
    ("0", "0, 2*y1"),
    ("0, 2*y1", "y1+y2"),
    ("y1", "2*y1"),
    ("2*y1", "0, 2*y1"),
]


def match_monomial_figure(diagram, fp, node_exprs, edge_exprs):
    """Map each figure node to the enumerated node with the same closure;
    assert the mapping is a bijection carrying the figure's edges exactly."""
    cap = diagram.nodes[0].cap
    by_members = {}
    for expr in node_exprs:
        gens = [parse_monomial(t.strip(), fp) for t in expr.split(",")]
        members = generate(gens, fp, cap).members
        by_members[expr] = members
    node_index = {node.members: i for i, node in enumerate(diagram.nodes)}
    assert len(node_index) == len(diagram.nodes)
    mapping = {}
    for expr, members in by_members.items():
        assert members in node_index, f"figure node <{expr}> not enumerated"
        mapping[expr] = node_index[members]
    assert len(set(mapping.values())) == len(node_exprs)
    assert len(diagram.nodes) == len(node_exprs)
    expected_edges = {(mapping[a], mapping[b]) for a, b in edge_exprs}
    assert expected_edges == set(diagram.edges)
    return mapping


def match_linear_figure(diagram, modulus, node_exprs, edge_exprs):
    from monoclone.semiaffine import linear_closure, parse_form

    cap = diagram.nodes[0].cap
    node_index = {node.members: i for i, node in enumerate(diagram.nodes)}
    mapping = {}
    for expr in node_exprs:
        forms = [parse_form(t.strip(), modulus) for t in expr.split(",")]
        members = linear_closure(forms, modulus, cap).members
        assert members in node_index, f"figure node <{expr}> not enumerated"
        mapping[expr] = node_index[members]
    assert len(set(mapping.values())) == len(node_exprs)
    assert len(diagram.nodes) == len(node_exprs)
    expected_edges = {(mapping[a], mapping[b]) for a, b in edge_exprs}
    assert expected_edges == set(diagram.edges)
    return mapping
