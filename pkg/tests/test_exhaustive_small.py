"""Exhaustive small-scale validation of the tightness characterization.

Every labelled (2,2)-tight graph on up to six vertices is enumerated, the
reducer must peel each one back to a single vertex with an isomorphic
replay, and one representative per isomorphism class must reach rank
2n - 2 under sampled lq placements.  This pins the completeness of the
inverse-move enumeration on the full population, not just on graphs the
generator produced.
"""

import itertools

import pytest

from rigidkit.canonical import canonical_form
from rigidkit.graph import Graph, TIGHT_2_2, is_sparse_pebble
from rigidkit.lq import sample_regular_placement
from rigidkit.norms import LqNorm
from rigidkit.reduce import reduce_to_k1

# labelled tight graph counts double-checked by hand for n = 4 (only the
# complete graph) and cross-checked against the enumeration itself
EXPECTED_CLASS_COUNTS = {4: 1, 5: 2, 6: 12}


def _all_tight_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for combo in itertools.combinations(range(len(pairs)), 2 * n - 2):
        edges = tuple(pairs[i] for i in combo)
        try:
            g = Graph(n, edges)
        except Exception:
            continue
        if is_sparse_pebble(g, TIGHT_2_2).is_tight:
            yield g


@pytest.mark.parametrize("n", [4, 5, 6])
def test_every_tight_graph_reduces_and_is_rigid(n):
    classes = {}
    for g in _all_tight_graphs(n):
        seq = reduce_to_k1(g)
        assert canonical_form(seq.replay()) == canonical_form(g)
        classes.setdefault(canonical_form(g), g)
    assert len(classes) == EXPECTED_CLASS_COUNTS[n]
    for g in classes.values():
        _, rank = sample_regular_placement(g, LqNorm(3), seed=1, trials=20)
        assert rank == 2 * n - 2
