"""Graph moves: application, bookkeeping, random generation."""

import pytest

from rigidkit.errors import InvalidMoveError
from rigidkit.graph import K1, TIGHT_2_2, complete_graph, is_sparse_pebble
from rigidkit.moves import (
    H1Move,
    H2Move,
    MoveSequence,
    V4CMove,
    VK4Move,
    VSplitMove,
    apply_move,
    generate_tight_graph,
)


def test_vk4_on_k1_gives_k4():
    assert apply_move(K1, VK4Move(0, ())) == complete_graph(4)


def test_h1_on_k4():
    g = apply_move(complete_graph(4), H1Move(0, 1))
    assert g.n == 5 and len(g.edges) == 8
    assert g.has_edge(4, 0) and g.has_edge(4, 1)


def test_h2_on_k4():
    g = apply_move(complete_graph(4), H2Move(0, 1, 2))
    assert g.n == 5 and len(g.edges) == 8
    assert not g.has_edge(0, 1)
    assert g.has_edge(4, 0) and g.has_edge(4, 1) and g.has_edge(4, 2)


def test_v4c_on_k4():
    g = apply_move(complete_graph(4), V4CMove(0, 1, 2, reassigned=((0, 3),)))
    assert g.n == 5 and len(g.edges) == 8
    # 4-cycle 0-1-4-2 plus edge 0-3 re-hung to 4-3
    assert g.has_edge(4, 1) and g.has_edge(4, 2) and g.has_edge(4, 3)
    assert not g.has_edge(0, 3) and not g.has_edge(0, 4)
    assert g.has_edge(0, 1) and g.has_edge(0, 2)


def test_vsplit_on_k4():
    g = apply_move(complete_graph(4), VSplitMove(0, 1, reassigned=((0, 2),)))
    assert g.n == 5 and len(g.edges) == 8
    assert g.has_edge(4, 0) and g.has_edge(4, 1) and g.has_edge(4, 2)
    assert not g.has_edge(0, 2)
    assert g.has_edge(0, 1) and g.has_edge(0, 3)


def test_vk4_with_assignment():
    base = apply_move(K1, VK4Move(0, ()))  # K4
    g = apply_move(base, H1Move(0, 1))  # vertex 4 adjacent to 0, 1
    g2 = apply_move(g, VK4Move(4, ((0, 1), (1, 3))))
    assert g2.n == 8 and len(g2.edges) == 8 - 2 + 6 + 2
    # corner w1 re-uses label 4; w2..w4 take labels 5..7, so corner 3 is 6
    assert g2.has_edge(4, 0) and g2.has_edge(6, 1)


def test_move_preconditions():
    k4 = complete_graph(4)
    with pytest.raises(InvalidMoveError):
        apply_move(k4, H1Move(0, 0))
    with pytest.raises(InvalidMoveError):
        apply_move(k4, H1Move(0, 7))
    with pytest.raises(InvalidMoveError):
        apply_move(K1, H2Move(0, 1, 2))
    with pytest.raises(InvalidMoveError):
        apply_move(k4, H2Move(0, 1, 1))
    with pytest.raises(InvalidMoveError):
        apply_move(k4, V4CMove(0, 1, 1))
    with pytest.raises(InvalidMoveError):
        apply_move(k4, V4CMove(0, 1, 2, reassigned=((0, 2),)))  # chosen edge
    with pytest.raises(InvalidMoveError):
        apply_move(k4, VSplitMove(0, 1, reassigned=((0, 1),)))
    with pytest.raises(InvalidMoveError):
        apply_move(k4, VK4Move(0, ()))  # misses the neighbours
    with pytest.raises(InvalidMoveError):
        apply_move(k4, VK4Move(0, ((1, 5), (2, 1), (3, 1))))  # corner out of range


def test_count_bookkeeping():
    # per move: edge delta equals twice the vertex delta
    g = complete_graph(4)
    for move in (H1Move(0, 1), H2Move(0, 1, 2), V4CMove(0, 1, 2), VSplitMove(0, 1),
                 VK4Move(0, ((1, 1), (2, 2), (3, 4)))):
        g2 = apply_move(g, move)
        assert len(g2.edges) - len(g.edges) == 2 * (g2.n - g.n)


def test_generate_target_1_is_k1():
    g, seq = generate_tight_graph(1, "A", seed=3)
    assert g == K1 and seq.moves == ()


def test_k4_is_the_unique_tight_graph_on_four_vertices():
    import itertools

    from rigidkit.graph import Graph, is_sparse_bruteforce

    tight = []
    pairs = list(itertools.combinations(range(4), 2))
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        try:
            g = Graph(4, edges)
        except Exception:
            continue
        if is_sparse_bruteforce(g, TIGHT_2_2).is_tight:
            tight.append(g)
    assert tight == [complete_graph(4)]


def test_generate_target_4_is_k4():
    # the only tight graph on four vertices; the sole move from K1 is VK4
    for seed in (0, 7, 123):
        g, seq = generate_tight_graph(4, "A", seed=seed)
        assert g == complete_graph(4)
        assert len(seq.moves) == 1 and isinstance(seq.moves[0], VK4Move)


@pytest.mark.parametrize("scheme", ["A", "B"])
@pytest.mark.parametrize("target", [6, 10])
def test_generate_tight_and_replayable(scheme, target):
    for seed in range(5):
        g, seq = generate_tight_graph(target, scheme, seed=seed)
        assert target <= g.n <= target + 2
        assert is_sparse_pebble(g, TIGHT_2_2).is_tight
        assert seq.replay() == g


def test_generate_deterministic():
    a = generate_tight_graph(9, "B", seed=42)
    b = generate_tight_graph(9, "B", seed=42)
    assert a == b


def test_tightness_preserved_along_prefixes():
    g, seq = generate_tight_graph(11, "A", seed=8)
    for prefix in MoveSequence(seq.start, seq.moves).prefixes():
        assert is_sparse_pebble(prefix, TIGHT_2_2).is_tight
