"""Simple connected graphs and (k,l)-sparsity counting.

Graphs are immutable values: vertices are the integers 0..n-1 and the edge
set is stored as a canonically sorted tuple of ascending pairs.  Sparsity
(|E(H)| <= k|V(H)| - l for every subgraph H with at least one edge) is
decided two ways: by exhaustive enumeration of induced subgraphs, which is
the oracle for small n, and by a (k,l) pebble game, which is polynomial
time.  Both report a violating vertex subset on failure.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EdgeNotInGraphError,
    SelfLoopError,
    TooLargeError,
    VertexOutOfRangeError,
)

Edge = tuple[int, int]

BRUTE_FORCE_MAX_N = 12


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _connected(n: int, edges) -> bool:
    if n == 1:
        return True
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count == n


@dataclass(frozen=True)
class Graph:
    """Labelled simple connected graph on vertices 0..n-1."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise VertexOutOfRangeError(f"vertex count must be a positive integer, got {self.n!r}")
        seen: set[Edge] = set()
        normalized = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRangeError(f"edge {(u, v)} outside 0..{self.n - 1}")
            e = canonical_edge(u, v)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        if not _connected(self.n, self.edges):
            raise DisconnectedError("graph is not connected")

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_set

    def edges_at(self, v: int) -> tuple[Edge, ...]:
        return tuple(canonical_edge(v, w) for w in sorted(self.adjacency[v]))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


K1 = Graph(1, ())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def validate_graph(raw_vertex_count: int, raw_edge_list) -> Graph:
    """Build a Graph from raw input, raising a typed error on any defect."""
    return Graph(int(raw_vertex_count), tuple((int(a), int(b)) for a, b in raw_edge_list))


@dataclass(frozen=True)
class SparsityParams:
    """Counting parameters: subgraphs must satisfy |E(H)| <= k|V(H)| - l."""

    k: int
    l: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if not 0 <= self.l < 2 * self.k:
            raise ValueError(f"l must satisfy 0 <= l < 2k, got l={self.l}, k={self.k}")


TIGHT_2_2 = SparsityParams(2, 2)


@dataclass(frozen=True)
class SparsityVerdict:
    is_sparse: bool
    is_tight: bool
    witness: tuple[int, ...] | None = None

    def __post_init__(self):
        assert not (self.is_tight and not self.is_sparse)
        assert (self.witness is not None) == (not self.is_sparse)


def is_sparse_bruteforce(graph: Graph, params: SparsityParams) -> SparsityVerdict:
    """Check the subgraph counts by enumerating all induced vertex subsets.

    Only induced subgraphs need checking (they maximize the edge count for
    a fixed vertex set).  Subsets are scanned smallest-first so the witness
    is a minimal-size violator.
    """
    n = graph.n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLargeError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got n={n}")
    k, l = params.k, params.l
    for size in range(2, n + 1):
        bound = k * size - l
        for subset in itertools.combinations(range(n), size):
            members = set(subset)
            count = sum(1 for u, v in graph.edges if u in members and v in members)
            if count >= 1 and count > bound:
                return SparsityVerdict(False, False, witness=subset)
    tight = len(graph.edges) == k * n - l
    return SparsityVerdict(True, tight, None)


def is_sparse_pebble(graph: Graph, params: SparsityParams) -> SparsityVerdict:
    """Decide sparsity with the (k,l) pebble game.

    Each vertex starts with k pebbles; inserting an edge requires l+1
    pebbles on its endpoints, gathered by reversing directed paths.  An
    edge that cannot be inserted exposes a violating subset: the set of
    vertices reachable from its endpoints.
    """
    ok, witness = pebble_game(graph.n, graph.edges, params.k, params.l)
    if not ok:
        return SparsityVerdict(False, False, witness=witness)
    tight = len(graph.edges) == params.k * graph.n - params.l
    return SparsityVerdict(True, tight, None)


def pebble_game(n: int, edges, k: int, l: int) -> tuple[bool, tuple[int, ...] | None]:
    """Raw pebble game on (n, edges); returns (accepted, witness_or_None).

    Works on any edge list over 0..n-1, connected or not, so callers can
    test candidate graphs before constructing a Graph value.
    """
    pebbles = [k] * n
    out: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        while pebbles[u] + pebbles[v] <= l:
            if not _pull_pebble(out, pebbles, u, v):
                return False, tuple(sorted(_reachable(out, u, v)))
        # orient away from an endpoint that holds a pebble (for l < k the
        # gathered l+1 pebbles may all sit on one side)
        tail, head = (u, v) if pebbles[u] > 0 else (v, u)
        pebbles[tail] -= 1
        out[tail].add(head)
    return True, None


def _pull_pebble(out, pebbles, u, v) -> bool:
    # BFS over the directed graph from {u, v}; on finding a free pebble,
    # reverse the path so the pebble moves to the root it was found from.
    prev: dict[int, int | None] = {u: None, v: None}
    queue = deque((u, v))
    while queue:
        x = queue.popleft()
        for y in out[x]:
            if y in prev:
                continue
            prev[y] = x
            if pebbles[y] > 0:
                cur = y
                while prev[cur] is not None:
                    p = prev[cur]
                    out[p].remove(cur)
                    out[cur].add(p)
                    cur = p
                pebbles[y] -= 1
                pebbles[cur] += 1
                return True
            queue.append(y)
    return False


def _reachable(out, u, v) -> set[int]:
    seen = {u, v}
    stack = [u, v]
    while stack:
        x = stack.pop()
        for y in out[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _check_edge_subset(graph: Graph, edge_subset) -> list[Edge]:
    subset = [canonical_edge(int(u), int(v)) for u, v in edge_subset]
    for e in subset:
        if e not in graph.edge_set:
            raise EdgeNotInGraphError(f"edge {e} is not in the graph")
    return subset


def spans_all_vertices(graph: Graph, edge_subset) -> bool:
    """True iff the subgraph on these edges is a connected spanning subgraph."""
    subset = _check_edge_subset(graph, edge_subset)
    return _connected(graph.n, subset)


def is_spanning_tree(graph: Graph, edge_subset) -> bool:
    subset = _check_edge_subset(graph, edge_subset)
    return len(subset) == graph.n - 1 and _connected(graph.n, subset)


def spanning_tree_of(n: int, edges) -> tuple[Edge, ...] | None:
    """A BFS spanning tree of (n, edges), or None if not spanning-connected."""
    adj: list[list[tuple[int, Edge]]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append((v, (u, v)))
        adj[v].append((u, (u, v)))
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    tree: list[Edge] = []
    while queue:
        x = queue.popleft()
        for y, e in adj[x]:
            if not seen[y]:
                seen[y] = True
                tree.append(e)
                queue.append(y)
    if not all(seen):
        return None
    return tuple(sorted(tree))


def union_components(n: int, edges) -> list[list[int]]:
    """Connected components of (n, edges), as sorted vertex lists."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def random_connected_graph(n: int, extra_edges: int, rng: np.random.Generator) -> Graph:
    """Uniform-ish random connected graph: a random tree plus extra edges."""
    edges: set[Edge] = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    non_edges = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    rng.shuffle(non_edges)
    for e in non_edges[: min(extra_edges, len(non_edges))]:
        edges.add(e)
    return Graph(n, tuple(edges))
