"""Inductive graph moves that preserve the tight count |E| = 2|V| - 2.

Five moves act on a simple connected graph: degree-2 vertex addition (H1),
edge-split vertex addition (H2), vertex-to-4-cycle (V4C), vertex splitting
(VSPLIT) and the clique expansion replacing a vertex by a complete graph
on four new vertices (VK4).  The first four add one vertex and two edges
net; VK4 adds three vertices and six edges.  Scheme A is {H1, H2, V4C,
VK4}; scheme B is {H1, H2, VSPLIT, VK4}.

Label convention after a move: new vertices take the next free integer
labels, and VK4 re-uses the replaced vertex's label for its first corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidMoveError
from .graph import TIGHT_2_2, Edge, Graph, K1, canonical_edge, is_sparse_pebble
from .rng import rng_for


@dataclass(frozen=True)
class H1Move:
    """Adjoin a new vertex joined to two distinct existing vertices."""

    v1: int
    v2: int


@dataclass(frozen=True)
class H2Move:
    """Remove the edge v1v2, adjoin a new vertex joined to v1, v2 and v3."""

    v1: int
    v2: int
    v3: int


@dataclass(frozen=True)
class V4CMove:
    """Adjoin a new vertex v0 joined to v2 and v3 (both neighbours of v1),
    optionally re-hanging other edges at v1 onto v0; v1v2, v1v3 remain, so
    v1, v2, v0, v3 form a 4-cycle."""

    v1: int
    v2: int
    v3: int
    reassigned: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "reassigned", tuple(sorted(canonical_edge(*e) for e in self.reassigned)))


@dataclass(frozen=True)
class VSplitMove:
    """Adjoin a new vertex v0 joined to the endpoints of the edge v1v2,
    optionally re-hanging other edges at v1 onto v0."""

    v1: int
    v2: int
    reassigned: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "reassigned", tuple(sorted(canonical_edge(*e) for e in self.reassigned)))


@dataclass(frozen=True)
class VK4Move:
    """Replace v1 by four pairwise-joined new corners w1..w4, re-hanging
    each former edge v1u onto the corner given by ``assignment``.

    assignment: pairs (u, j) with j in 1..4, covering exactly the
    neighbours of v1.  Corner w1 re-uses v1's label; w2..w4 take the next
    free labels.
    """

    v1: int
    assignment: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(sorted((int(u), int(j)) for u, j in self.assignment)))


Move = Union[H1Move, H2Move, V4CMove, VSplitMove, VK4Move]


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidMoveError(message)


def _vertex_in_range(g: Graph, v: int, name: str):
    _require(0 <= v < g.n, f"{name}={v} is not a vertex of a graph on {g.n} vertices")


def apply_move(g: Graph, move: Move) -> Graph:
    """Apply one move, validating its preconditions on g."""
    if isinstance(move, H1Move):
        return _apply_h1(g, move)
    if isinstance(move, H2Move):
        return _apply_h2(g, move)
    if isinstance(move, V4CMove):
        return _apply_v4c(g, move)
    if isinstance(move, VSplitMove):
        return _apply_vsplit(g, move)
    if isinstance(move, VK4Move):
        return _apply_vk4(g, move)
    raise InvalidMoveError(f"unknown move {move!r}")


def _apply_h1(g: Graph, m: H1Move) -> Graph:
    _vertex_in_range(g, m.v1, "v1")
    _vertex_in_range(g, m.v2, "v2")
    _require(m.v1 != m.v2, "H1 requires two distinct vertices")
    v0 = g.n
    return Graph(g.n + 1, g.edges + ((v0, m.v1), (v0, m.v2)))


def _apply_h2(g: Graph, m: H2Move) -> Graph:
    _vertex_in_range(g, m.v1, "v1")
    _vertex_in_range(g, m.v2, "v2")
    _vertex_in_range(g, m.v3, "v3")
    removed = canonical_edge(m.v1, m.v2)
    _require(removed in g.edge_set, f"H2 requires the edge {removed} to exist")
    _require(m.v3 not in (m.v1, m.v2), "H2 requires v3 distinct from the removed edge's endpoints")
    v0 = g.n
    edges = tuple(e for e in g.edges if e != removed)
    return Graph(g.n + 1, edges + ((v0, m.v1), (v0, m.v2), (v0, m.v3)))


def _check_reassigned(g: Graph, v1: int, reassigned, excluded: set[int], tag: str) -> set[Edge]:
    moved = set()
    for e in reassigned:
        _require(e in g.edge_set, f"{tag}: reassigned edge {e} is not in the graph")
        _require(v1 in e, f"{tag}: reassigned edge {e} is not incident to v1={v1}")
        other = e[0] if e[1] == v1 else e[1]
        _require(other not in excluded, f"{tag}: edge {e} to {other} may not be reassigned")
        moved.add(e)
    return moved


def _apply_v4c(g: Graph, m: V4CMove) -> Graph:
    _vertex_in_range(g, m.v1, "v1")
    _vertex_in_range(g, m.v2, "v2")
    _vertex_in_range(g, m.v3, "v3")
    _require(m.v2 != m.v3, "V4C requires two distinct edges at v1")
    for w in (m.v2, m.v3):
        _require(canonical_edge(m.v1, w) in g.edge_set, f"V4C requires the edge {canonical_edge(m.v1, w)}")
    moved = _check_reassigned(g, m.v1, m.reassigned, {m.v2, m.v3}, "V4C")
    v0 = g.n
    edges = [e for e in g.edges if e not in moved]
    for e in moved:
        other = e[0] if e[1] == m.v1 else e[1]
        edges.append((other, v0))
    edges += [(m.v2, v0), (m.v3, v0)]
    return Graph(g.n + 1, tuple(edges))


def _apply_vsplit(g: Graph, m: VSplitMove) -> Graph:
    _vertex_in_range(g, m.v1, "v1")
    _vertex_in_range(g, m.v2, "v2")
    base = canonical_edge(m.v1, m.v2)
    _require(base in g.edge_set, f"VSPLIT requires the edge {base} to exist")
    moved = _check_reassigned(g, m.v1, m.reassigned, {m.v2}, "VSPLIT")
    _require(base not in moved, "VSPLIT may not reassign the chosen edge itself")
    v0 = g.n
    edges = [e for e in g.edges if e not in moved]
    for e in moved:
        other = e[0] if e[1] == m.v1 else e[1]
        edges.append((other, v0))
    edges += [(m.v1, v0), (m.v2, v0)]
    return Graph(g.n + 1, tuple(edges))


def _apply_vk4(g: Graph, m: VK4Move) -> Graph:
    _vertex_in_range(g, m.v1, "v1")
    assigned = {u for u, _ in m.assignment}
    _require(assigned == set(g.neighbors(m.v1)),
             f"VK4 assignment must cover exactly the neighbours of v1={m.v1}")
    _require(len(m.assignment) == len(assigned), "VK4 assignment repeats a neighbour")
    _require(all(1 <= j <= 4 for _, j in m.assignment), "VK4 corners are numbered 1..4")
    corners = [m.v1, g.n, g.n + 1, g.n + 2]
    edges = [e for e in g.edges if m.v1 not in e]
    for a in range(4):
        for b in range(a + 1, 4):
            edges.append((corners[a], corners[b]))
    for u, j in m.assignment:
        edges.append((u, corners[j - 1]))
    return Graph(g.n + 3, tuple(edges))


@dataclass(frozen=True)
class MoveSequence:
    """An ordered list of moves, each valid on its predecessor's result."""

    start: Graph = K1
    moves: tuple[Move, ...] = ()

    def replay(self) -> Graph:
        g = self.start
        for m in self.moves:
            g = apply_move(g, m)
        return g

    def prefixes(self):
        """Yield the graph after each move (starting graph first)."""
        g = self.start
        yield g
        for m in self.moves:
            g = apply_move(g, m)
            yield g


SCHEMES = {
    "A": (H1Move, H2Move, V4CMove, VK4Move),
    "B": (H1Move, H2Move, VSplitMove, VK4Move),
}


def _valid_move_types(g: Graph, scheme_types) -> list[type]:
    valid = []
    for t in scheme_types:
        if t is H1Move and g.n >= 2:
            valid.append(t)
        elif t is H2Move and g.n >= 3 and g.edges:
            valid.append(t)
        elif t is V4CMove and any(g.degree(v) >= 2 for v in range(g.n)):
            valid.append(t)
        elif t is VSplitMove and g.edges:
            valid.append(t)
        elif t is VK4Move:
            valid.append(t)
    return valid


def _sample_move(g: Graph, move_type: type, rng) -> Move:
    if move_type is H1Move:
        v1, v2 = rng.choice(g.n, size=2, replace=False)
        return H1Move(int(v1), int(v2))
    if move_type is H2Move:
        u, v = g.edges[int(rng.integers(len(g.edges)))]
        others = [w for w in range(g.n) if w not in (u, v)]
        return H2Move(u, v, int(others[int(rng.integers(len(others)))]))
    if move_type is V4CMove:
        candidates = [v for v in range(g.n) if g.degree(v) >= 2]
        v1 = int(candidates[int(rng.integers(len(candidates)))])
        nbrs = sorted(g.neighbors(v1))
        i, j = rng.choice(len(nbrs), size=2, replace=False)
        v2, v3 = nbrs[int(i)], nbrs[int(j)]
        rest = [canonical_edge(v1, w) for w in nbrs if w not in (v2, v3)]
        reassigned = tuple(e for e in rest if rng.random() < 0.5)
        return V4CMove(v1, v2, v3, reassigned)
    if move_type is VSplitMove:
        e = g.edges[int(rng.integers(len(g.edges)))]
        v1, v2 = (e[0], e[1]) if rng.random() < 0.5 else (e[1], e[0])
        rest = [canonical_edge(v1, w) for w in sorted(g.neighbors(v1)) if w != v2]
        reassigned = tuple(x for x in rest if rng.random() < 0.5)
        return VSplitMove(v1, v2, reassigned)
    if move_type is VK4Move:
        v1 = int(rng.integers(g.n))
        assignment = tuple((w, int(rng.integers(1, 5))) for w in sorted(g.neighbors(v1)))
        return VK4Move(v1, assignment)
    raise AssertionError(move_type)


def generate_tight_graph(target_n: int, scheme: str = "A", seed: int = 0) -> tuple[Graph, MoveSequence]:
    """Random (2,2)-tight graph grown from a single vertex by scheme moves.

    Moves are applied until the vertex count reaches target_n; the clique
    expansion jumps by three, so the result has between target_n and
    target_n + 2 vertices.  Deterministic for a fixed seed.
    """
    if target_n < 1:
        raise ValueError(f"target_n must be >= 1, got {target_n}")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {sorted(SCHEMES)}, got {scheme!r}")
    rng = rng_for(seed, 0x6D6F7665)
    g = K1
    moves: list[Move] = []
    while g.n < target_n:
        types = _valid_move_types(g, SCHEMES[scheme])
        move_type = types[int(rng.integers(len(types)))]
        m = _sample_move(g, move_type, rng)
        g = apply_move(g, m)
        moves.append(m)
    verdict = is_sparse_pebble(g, TIGHT_2_2)
    if not verdict.is_tight:  # pragma: no cover - the moves preserve tightness
        raise AssertionError(f"generated graph is not tight: {g!r}")
    return g, MoveSequence(K1, tuple(moves))
