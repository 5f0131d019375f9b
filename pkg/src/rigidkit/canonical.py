"""Canonical labelling of small graphs, for exact isomorphism keys.

Colour refinement followed by individualization with backtracking; the
canonical form is the lexicographically smallest relabelled edge tuple
over all refinement-compatible labellings.  Exponential in the worst case
but entirely adequate for the desk-scale graphs handled here (n <= ~15).
"""

from __future__ import annotations

from collections import defaultdict

from .graph import Edge, Graph


def _refine(adj, colours):
    n = len(adj)
    while True:
        sig = [(colours[v], tuple(sorted(colours[w] for w in adj[v]))) for v in range(n)]
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [order[s] for s in sig]
        if new == colours:
            return new
        colours = new


def canonical_form(graph: Graph) -> tuple[Edge, ...]:
    """Edge tuple of the canonically relabelled graph (isomorphism invariant)."""
    n = graph.n
    if n == 1:
        return ()
    adj = [sorted(graph.adjacency[v]) for v in range(n)]
    edges = graph.edges
    best: tuple[Edge, ...] | None = None

    def visit(colours):
        nonlocal best
        colours = _refine(adj, colours)
        cells = defaultdict(list)
        for v, c in enumerate(colours):
            cells[c].append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            enc = tuple(
                sorted(
                    (colours[u], colours[v]) if colours[u] < colours[v] else (colours[v], colours[u])
                    for u, v in edges
                )
            )
            if best is None or enc < best:
                best = enc
            return
        for v in cells[target]:
            child = list(colours)
            child[v] = -1  # unique marker; compression renumbers deterministically
            visit(child)

    visit([0] * n)
    assert best is not None
    return best


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    if sorted(a.degree(v) for v in range(a.n)) != sorted(b.degree(v) for v in range(b.n)):
        return False
    return canonical_form(a) == canonical_form(b)
