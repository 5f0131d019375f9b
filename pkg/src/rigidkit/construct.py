"""Colour-preserving placements for move sequences under two-facet norms.

Replaying a scheme-B sequence (H1, H2, VSPLIT, VK4) from a single vertex,
each move places its new vertices so that prescribed edge colours hold:

* H1: near the intersection of the facet-1 line through the first anchor
  and the facet-2 line through the second; the two new edges pick up
  colours 1 and 2.
* H2: near the intersection of the line through the removed edge with the
  other-facet line through the third anchor; the edges to the old
  endpoints inherit the removed edge's colour, the third gets the other.
* VSPLIT: at the split vertex shifted by epsilon along the other facet;
  the new edge to the split vertex gets the other colour, the one to its
  partner keeps the base edge's colour, re-hung edges keep theirs.
* VK4: a skewed unit cell scaled by r at the replaced vertex, giving the
  clique two monochrome spanning trees; re-hung edges keep their colours.

"Sufficiently small" is made operational by start-and-halve search with
explicit postcondition checks per move.  All geometry happens in the
standard-facet space (an isometric change of basis), then is mapped back,
so the recipes work for any two independent facet vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, ParameterUnderflowError, UnsupportedNormError
from .frameworks import Framework
from .graph import Edge, canonical_edge
from .moves import H1Move, H2Move, MoveSequence, VK4Move, VSplitMove, apply_move
from .norms import PolytopeNorm
from .polytope import WELL_POSITIONED_REL_TOL, colour_framework, spanning_tree_criteria
from .rng import rng_for

_MAX_ATTEMPTS = 80
_UNDERFLOW = 1e-13


@dataclass(frozen=True)
class PlacementParams:
    """Geometry knobs: the clique skew (epsilon), the clique scale (r) and
    the jitter radius for the line-intersection placements (delta)."""

    epsilon: float = 0.1
    r: float = 0.25
    delta: float = 0.05

    def __post_init__(self):
        if not (self.epsilon > 0 and self.r > 0 and self.delta > 0):
            raise ValueError("epsilon, r and delta must all be positive")


def _colour2(vec: np.ndarray, rel_tol: float = WELL_POSITIONED_REL_TOL) -> int | None:
    """Colour of a vector under standard facets e1, e2; None on a tie."""
    ax, ay = abs(float(vec[0])), abs(float(vec[1]))
    top, second, k = (ax, ay, 1) if ax >= ay else (ay, ax, 2)
    if top == 0.0 or top - second <= rel_tol * top:
        return None
    return k


def _distinct(candidate: np.ndarray, points: list[np.ndarray], skip: set[int] = frozenset()) -> bool:
    return all(
        i in skip or not np.array_equal(candidate, p) for i, p in enumerate(points)
    )


class _Builder:
    def __init__(self, params: PlacementParams, seed: int):
        self.params = params
        self.rng = rng_for(seed, 0x706C6163)
        self.points: list[np.ndarray] = [np.zeros(2)]
        self.colours: dict[Edge, int] = {}

    def fail(self, index: int, move, reason: str):
        raise ParameterUnderflowError(
            index, f"move {index} ({type(move).__name__}): {reason}"
        )

    def place_h1(self, index: int, move: H1Move):
        p1, p2 = self.points[move.v1], self.points[move.v2]
        anchor = np.array([p2[0], p1[1]])
        delta = self.params.delta
        for attempt in range(_MAX_ATTEMPTS):
            p0 = anchor + self.rng.uniform(-delta, delta, size=2)
            if (
                _distinct(p0, self.points)
                and _colour2(p0 - p1) == 1
                and _colour2(p0 - p2) == 2
            ):
                v0 = len(self.points)
                self.points.append(p0)
                self.colours[canonical_edge(v0, move.v1)] = 1
                self.colours[canonical_edge(v0, move.v2)] = 2
                return
            if attempt % 2 == 1:
                delta *= 0.5
            if delta < _UNDERFLOW:
                break
        self.fail(index, move, "no jitter produced the prescribed colours")

    def place_h2(self, index: int, move: H2Move):
        base = canonical_edge(move.v1, move.v2)
        c = self.colours[base]
        o = 3 - c
        p1, p2, p3 = (self.points[v] for v in (move.v1, move.v2, move.v3))
        direction = p2 - p1
        e_other = np.eye(2)[o - 1]
        # line p1 + t*direction meets p3 + s*e_other; a colour-c edge is
        # never parallel to the other facet in standard coordinates
        lhs = np.column_stack([direction, -e_other])
        t, _s = np.linalg.solve(lhs, p3 - p1)
        anchor = p1 + t * direction
        delta = self.params.delta
        for attempt in range(_MAX_ATTEMPTS):
            p0 = anchor + self.rng.uniform(-delta, delta, size=2)
            if (
                _distinct(p0, self.points)
                and _colour2(p0 - p1) == c
                and _colour2(p0 - p2) == c
                and _colour2(p0 - p3) == o
            ):
                v0 = len(self.points)
                self.points.append(p0)
                del self.colours[base]
                self.colours[canonical_edge(v0, move.v1)] = c
                self.colours[canonical_edge(v0, move.v2)] = c
                self.colours[canonical_edge(v0, move.v3)] = o
                return
            if attempt % 2 == 1:
                delta *= 0.5
            if delta < _UNDERFLOW:
                break
        self.fail(index, move, "no jitter produced the prescribed colours")

    def place_vsplit(self, index: int, move: VSplitMove):
        base = canonical_edge(move.v1, move.v2)
        c = self.colours[base]
        o = 3 - c
        p1, p2 = self.points[move.v1], self.points[move.v2]
        e_other = np.eye(2)[o - 1]
        moved = [(e, (e[0] if e[1] == move.v1 else e[1])) for e in move.reassigned]
        eps = self.params.epsilon
        while eps >= _UNDERFLOW:
            p0 = p1 + eps * e_other
            ok = (
                _distinct(p0, self.points)
                and _colour2(p0 - p1) == o
                and _colour2(p0 - p2) == c
                and all(_colour2(p0 - self.points[w]) == self.colours[e] for e, w in moved)
            )
            if ok:
                v0 = len(self.points)
                self.points.append(p0)
                for e, w in moved:
                    self.colours[canonical_edge(v0, w)] = self.colours.pop(e)
                self.colours[canonical_edge(v0, move.v1)] = o
                self.colours[canonical_edge(v0, move.v2)] = c
                return
            eps *= 0.5
        self.fail(index, move, "epsilon underflow before colours were preserved")

    def place_vk4(self, index: int, move: VK4Move):
        p1 = self.points[move.v1]
        n_before = len(self.points)
        corners_labels = [move.v1, n_before, n_before + 1, n_before + 2]
        # clique edge colours for the skewed cell: facet-1 tree {12,13,34},
        # facet-2 tree {14,23,24}
        pattern = {(0, 1): 1, (0, 2): 1, (2, 3): 1, (0, 3): 2, (1, 2): 2, (1, 3): 2}
        eps = self.params.epsilon
        r = self.params.r
        for _attempt in range(_MAX_ATTEMPTS):
            w = [
                p1,
                p1 + np.array([r, 0.0]),
                p1 + np.array([r, r * (1.0 - eps)]),
                p1 + np.array([0.0, r * (1.0 + eps)]),
            ]
            internal_ok = all(
                _colour2(w[a] - w[b]) == k for (a, b), k in pattern.items()
            )
            if not internal_ok:
                eps *= 0.5
                r *= 0.5
                if eps < _UNDERFLOW:
                    break
                continue
            others_ok = all(
                _distinct(w[i], self.points, skip={move.v1}) for i in (1, 2, 3)
            ) and all(
                _colour2(w[j - 1] - self.points[u]) == self.colours[canonical_edge(move.v1, u)]
                for u, j in move.assignment
            )
            if others_ok:
                self.points.append(w[1])
                self.points.append(w[2])
                self.points.append(w[3])
                old = {
                    u: self.colours.pop(canonical_edge(move.v1, u))
                    for u, _ in move.assignment
                }
                for (a, b), k in pattern.items():
                    self.colours[canonical_edge(corners_labels[a], corners_labels[b])] = k
                for u, j in move.assignment:
                    self.colours[canonical_edge(corners_labels[j - 1], u)] = old[u]
                return
            r *= 0.5
            if r < _UNDERFLOW:
                break
        self.fail(index, move, "r/epsilon underflow before colours were preserved")


def construct_coloured_placement(
    sequence: MoveSequence,
    norm: PolytopeNorm,
    params: PlacementParams | None = None,
    seed: int = 0,
) -> Framework:
    """Well-positioned framework realizing a scheme-B sequence so that both
    monochrome subgraphs span.  Deterministic per seed; raises
    ParameterUnderflowError (with the failing move index) if halving the
    parameters cannot satisfy the colour constraints."""
    if norm.d != 2 or norm.s != 2:
        raise UnsupportedNormError("the constructor needs exactly two independent facets in the plane")
    if sequence.start.n != 1:
        raise ConstructionError("construction sequences must start from a single vertex")
    params = params or PlacementParams()
    builder = _Builder(params, seed)
    g = sequence.start
    for index, move in enumerate(sequence.moves):
        g_next = apply_move(g, move)  # validates combinatorial preconditions
        if isinstance(move, H1Move):
            builder.place_h1(index, move)
        elif isinstance(move, H2Move):
            builder.place_h2(index, move)
        elif isinstance(move, VSplitMove):
            builder.place_vsplit(index, move)
        elif isinstance(move, VK4Move):
            builder.place_vk4(index, move)
        else:
            raise UnsupportedNormError(
                f"move {type(move).__name__} has no colour-preserving placement recipe"
            )
        g = g_next
    points_std = np.array(builder.points)
    # map back from standard facets: the isometry x -> B x sent the target
    # norm to the coordinatewise max, so its inverse realizes the recipes
    points = np.linalg.solve(norm.facets, points_std.T).T
    framework = Framework(g, points, norm)
    colouring = colour_framework(framework)
    if not colouring.well_positioned or colouring.colours != builder.colours:
        raise ConstructionError("colour bookkeeping disagrees with the realized framework")
    criteria = spanning_tree_criteria(framework)
    if not all(criteria.colour_spans[k] for k in (1, 2)):
        raise ConstructionError("a monochrome subgraph fails to span the constructed framework")
    return framework
