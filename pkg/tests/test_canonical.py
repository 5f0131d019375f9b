"""Canonical labelling: invariance under relabelling, discrimination."""

import itertools

from hypothesis import given, settings, strategies as st

from rigidkit.canonical import are_isomorphic, canonical_form
from rigidkit.graph import Graph, complete_graph

from test_graph import connected_graphs


def _relabel(g: Graph, perm) -> Graph:
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges))


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_n=7), st.randoms(use_true_random=False))
def test_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(_relabel(g, perm)) == canonical_form(g)


def test_distinguishes_small_nonisomorphic():
    path = Graph(4, ((0, 1), (1, 2), (2, 3)))
    star = Graph(4, ((0, 1), (0, 2), (0, 3)))
    assert canonical_form(path) != canonical_form(star)
    assert not are_isomorphic(path, star)


def test_exhaustive_pairs_n5():
    # same canonical form iff an explicit vertex bijection matches the edges
    graphs = []
    pairs = list(itertools.combinations(range(5), 2))
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        try:
            graphs.append(Graph(5, edges))
        except Exception:
            continue
    import random

    rnd = random.Random(1)
    sample = rnd.sample(graphs, 60)
    for a, b in itertools.combinations(sample, 2):
        brute = any(
            {(min(p[u], p[v]), max(p[u], p[v])) for u, v in a.edges} == set(b.edges)
            for p in itertools.permutations(range(5))
        )
        assert are_isomorphic(a, b) == brute


def test_complete_graphs():
    assert canonical_form(complete_graph(4)) == complete_graph(4).edges
    assert are_isomorphic(complete_graph(4), complete_graph(4))
    assert not are_isomorphic(complete_graph(4), complete_graph(3))
