"""Reduce a (2,2)-tight graph to a single vertex by inverse moves.

The search peels one vertex (or a whole 4-clique) at a time, trying
inverse moves cheapest-first: degree-2 removal, degree-3 removal with a
replacement edge, clique contraction, then the two merge moves on
suitable vertex pairs.  Every intermediate graph is checked tight with
the pebble game, states are memoized by canonical form, and the recorded
forward moves are expressed in the labels of the replayed graphs, so the
returned sequence replays from K1 to a relabelled copy of the input.
"""

from __future__ import annotations

import itertools

from .canonical import canonical_form
from .errors import NotTightError, ReductionNotFoundError
from .graph import Edge, Graph, K1, canonical_edge, is_sparse_pebble, pebble_game, TIGHT_2_2
from .moves import H1Move, H2Move, MoveSequence, V4CMove, VK4Move, VSplitMove

ALL_INVERSES = ("h1", "h2", "vk4", "v4c", "vsplit")


def reduce_to_k1(graph: Graph, allowed: tuple[str, ...] = ALL_INVERSES) -> MoveSequence:
    """Construction sequence from K1 whose replay is isomorphic to ``graph``.

    Raises NotTightError when the pebble game rejects the input; every
    (2,2)-tight graph admits a sequence over the full move set, so
    ReductionNotFoundError can only occur under a restricted ``allowed``.
    """
    unknown = set(allowed) - set(ALL_INVERSES)
    if unknown:
        raise ValueError(f"unknown inverse moves {sorted(unknown)}; choose from {ALL_INVERSES}")
    verdict = is_sparse_pebble(graph, TIGHT_2_2)
    if not verdict.is_tight:
        raise NotTightError(
            f"graph is not (2,2)-tight: |E|={len(graph.edges)}, 2n-2={2 * graph.n - 2}"
            + (f", violating subset {verdict.witness}" if verdict.witness else "")
        )
    dead_ends: set[tuple[Edge, ...]] = set()
    result = _search(graph, allowed, dead_ends)
    if result is None:
        raise ReductionNotFoundError(
            f"no reduction to a single vertex using only {sorted(set(allowed))}"
        )
    moves, _sigma = result
    return MoveSequence(K1, tuple(moves))


def _search(g: Graph, allowed, dead_ends):
    """Returns (moves, sigma) where replaying ``moves`` from K1 yields
    sigma(g) exactly (sigma maps g's labels to the replay's labels)."""
    if g.n == 1:
        return [], {0: 0}
    key = canonical_form(g)
    if key in dead_ends:
        return None
    for h, finish in _inverse_candidates(g, allowed):
        sub = _search(h, allowed, dead_ends)
        if sub is not None:
            moves, sigma_h = sub
            move, sigma_g = finish(sigma_h)
            return moves + [move], sigma_g
    dead_ends.add(key)
    return None


def _tight_graph(n: int, edges) -> Graph | None:
    edges = tuple(sorted(set(canonical_edge(*e) for e in edges)))
    if len(edges) != 2 * n - 2:
        return None
    ok, _ = pebble_game(n, edges, 2, 2)
    if not ok:
        return None
    # full count + sparsity force connectivity, so this cannot raise
    return Graph(n, edges)


def _drop_map(n: int, removed: set[int]) -> dict[int, int]:
    keep = [v for v in range(n) if v not in removed]
    return {v: i for i, v in enumerate(keep)}


def _inverse_candidates(g: Graph, allowed):
    if "h1" in allowed:
        yield from _inverse_h1(g)
    if "h2" in allowed:
        yield from _inverse_h2(g)
    if "vk4" in allowed:
        yield from _inverse_vk4(g)
    if "v4c" in allowed:
        yield from _inverse_v4c(g)
    if "vsplit" in allowed:
        yield from _inverse_vsplit(g)


def _inverse_h1(g: Graph):
    for v0 in range(g.n):
        if g.degree(v0) != 2:
            continue
        a, b = sorted(g.neighbors(v0))
        phi = _drop_map(g.n, {v0})
        edges = [(phi[u], phi[v]) for u, v in g.edges if v0 not in (u, v)]
        h = _tight_graph(g.n - 1, edges)
        if h is None:
            continue

        def finish(sigma_h, v0=v0, a=a, b=b, phi=phi):
            move = H1Move(sigma_h[phi[a]], sigma_h[phi[b]])
            sigma = {x: sigma_h[phi[x]] for x in phi}
            sigma[v0] = g.n - 1
            return move, sigma

        yield h, finish


def _inverse_h2(g: Graph):
    for v0 in range(g.n):
        if g.degree(v0) != 3:
            continue
        nbrs = sorted(g.neighbors(v0))
        phi = _drop_map(g.n, {v0})
        base = [(phi[u], phi[v]) for u, v in g.edges if v0 not in (u, v)]
        for x, y in itertools.combinations(nbrs, 2):
            if g.has_edge(x, y):
                continue
            z = next(w for w in nbrs if w not in (x, y))
            h = _tight_graph(g.n - 1, base + [(phi[x], phi[y])])
            if h is None:
                continue

            def finish(sigma_h, v0=v0, x=x, y=y, z=z, phi=phi):
                move = H2Move(sigma_h[phi[x]], sigma_h[phi[y]], sigma_h[phi[z]])
                sigma = {w: sigma_h[phi[w]] for w in phi}
                sigma[v0] = g.n - 1
                return move, sigma

            yield h, finish


def _inverse_vk4(g: Graph):
    for quad in itertools.combinations(range(g.n), 4):
        clique = set(quad)
        if not all(g.has_edge(u, v) for u, v in itertools.combinations(quad, 2)):
            continue
        owners: list[tuple[int, int]] = []  # (outside vertex, corner index 0..3)
        ok = True
        seen_outside: set[int] = set()
        for j, c in enumerate(quad):
            for u in sorted(g.neighbors(c) - clique):
                if u in seen_outside:
                    ok = False
                    break
                seen_outside.add(u)
                owners.append((u, j))
            if not ok:
                break
        if not ok:
            continue
        c0 = quad[0]
        removed = {quad[1], quad[2], quad[3]}
        phi = _drop_map(g.n, removed)
        edges = [(phi[u], phi[v]) for u, v in g.edges if u not in clique and v not in clique]
        edges += [(phi[c0], phi[u]) for u, _ in owners]
        h = _tight_graph(g.n - 3, edges)
        if h is None:
            continue

        def finish(sigma_h, quad=quad, owners=owners, phi=phi):
            nh = g.n - 3
            assignment = tuple((sigma_h[phi[u]], j + 1) for u, j in owners)
            move = VK4Move(sigma_h[phi[quad[0]]], assignment)
            sigma = {x: sigma_h[phi[x]] for x in phi}
            for offset, c in enumerate(quad[1:]):
                sigma[c] = nh + offset
            return move, sigma

        yield h, finish


def _merge_candidate(g: Graph, keep: int, drop: int, drop_links: set[int]):
    """Merge ``drop`` into ``keep``: drop its edges to ``drop_links`` and
    re-hang its remaining edges onto ``keep``.  Returns (h, phi, others)
    or None when the merged graph is not tight."""
    others = sorted(g.neighbors(drop) - drop_links - {keep})
    # re-hung edges cannot collide: a shared neighbour would be a common
    # neighbour beyond drop_links, excluded by the caller's cardinality check
    phi = _drop_map(g.n, {drop})
    edges = [(phi[u], phi[v]) for u, v in g.edges if drop not in (u, v)]
    edges += [(phi[keep], phi[w]) for w in others]
    h = _tight_graph(g.n - 1, edges)
    if h is None:
        return None
    return h, phi, others


def _inverse_v4c(g: Graph):
    for x, y in itertools.combinations(range(g.n), 2):
        if g.has_edge(x, y):
            continue
        common = g.neighbors(x) & g.neighbors(y)
        if len(common) != 2:
            continue
        a, b = sorted(common)
        cand = _merge_candidate(g, x, y, {a, b})
        if cand is None:
            continue
        h, phi, others = cand

        def finish(sigma_h, x=x, y=y, a=a, b=b, phi=phi, others=others):
            v1 = sigma_h[phi[x]]
            reassigned = tuple(canonical_edge(v1, sigma_h[phi[w]]) for w in others)
            move = V4CMove(v1, sigma_h[phi[a]], sigma_h[phi[b]], reassigned)
            sigma = {w: sigma_h[phi[w]] for w in phi}
            sigma[y] = g.n - 1
            return move, sigma

        yield h, finish


def _inverse_vsplit(g: Graph):
    for x, y in g.edges:
        common = g.neighbors(x) & g.neighbors(y)
        if len(common) != 1:
            continue
        (c,) = common
        cand = _merge_candidate(g, x, y, {c})
        if cand is None:
            continue
        h, phi, others = cand

        def finish(sigma_h, x=x, y=y, c=c, phi=phi, others=others):
            v1 = sigma_h[phi[x]]
            reassigned = tuple(canonical_edge(v1, sigma_h[phi[w]]) for w in others)
            move = VSplitMove(v1, sigma_h[phi[c]], reassigned)
            sigma = {w: sigma_h[phi[w]] for w in phi}
            sigma[y] = g.n - 1
            return move, sigma

        yield h, finish
