"""Rigidity analysis for frameworks under polytopic norms.

Every well-positioned edge has a unique maximizing facet; the induced
edge labelling is the framework colouring, and the rigidity matrix row of
an edge carries that facet vector (and its negative) in the endpoint
blocks.  In the plane with two facets, rigidity is equivalent to both
monochrome subgraphs spanning, and minimal rigidity to the two classes
being edge-disjoint spanning trees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ColourSpansError,
    DimensionMismatchError,
    NotWellPositionedError,
    UnsupportedNormError,
    VerdictCrossCheckError,
    WitnessUnavailableError,
)
from .frameworks import Framework, RigidityReport, report_from_rank
from .graph import Edge, spanning_tree_of, union_components
from .linalg import svd_analysis
from .norms import PolytopeNorm, max_facet_index

# an edge is tied (hence ill-positioned) when its top two |a.b_k| values
# differ by less than this, relative to the maximum
WELL_POSITIONED_REL_TOL = 1e-9


def _require_polytope(framework: Framework) -> PolytopeNorm:
    if not isinstance(framework.norm, PolytopeNorm):
        raise UnsupportedNormError("this operation applies to polytopic frameworks only")
    return framework.norm


@dataclass(frozen=True)
class FrameworkColouring:
    """Edge -> facet index (1-based) where the maximizer is unique."""

    colours: dict[Edge, int]
    well_positioned: bool
    offending_edges: tuple[Edge, ...]

    def monochrome_edges(self, colour: int) -> tuple[Edge, ...]:
        return tuple(e for e, k in self.colours.items() if k == colour)

    def used_colours(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.colours.values())))


def colour_framework(framework: Framework, rel_tol: float = WELL_POSITIONED_REL_TOL) -> FrameworkColouring:
    norm = _require_polytope(framework)
    colours: dict[Edge, int] = {}
    offending: list[Edge] = []
    for e in framework.graph.edges:
        k = max_facet_index(framework.edge_vector(e), norm, rel_tol)
        if k is None:
            offending.append(e)
        else:
            colours[e] = k + 1
    return FrameworkColouring(colours, not offending, tuple(offending))


def rigidity_matrix_poly(framework: Framework, allow_degenerate: bool = False) -> np.ndarray:
    """|E| x nd matrix with facet-vector rows, canonical edge order.

    Tied edges have no facet; by default that raises, because their zero
    rows would silently drop constraints.  ``allow_degenerate`` keeps the
    zero rows for exploratory use.
    """
    norm = _require_polytope(framework)
    colouring = colour_framework(framework)
    if not colouring.well_positioned and not allow_degenerate:
        raise NotWellPositionedError(colouring.offending_edges)
    n, d = framework.n, framework.d
    m = np.zeros((len(framework.graph.edges), n * d))
    for row, e in enumerate(framework.graph.edges):
        k = colouring.colours.get(e)
        if k is None:
            continue
        i, j = e
        facet = norm.facets[k - 1]
        m[row, i * d:(i + 1) * d] = facet
        m[row, j * d:(j + 1) * d] = -facet
    return m


def analyze_poly(framework: Framework, tol=None, allow_degenerate: bool = False) -> RigidityReport:
    """Rank/flex report under the polytopic rigidity matrix.

    For two facets in the plane the verdict is cross-checked against the
    spanning-tree criteria: two spanning colour classes force rigidity,
    and rigidity forces every used class to span.  A disagreement means
    the numerics failed and is raised, never returned.
    """
    norm = _require_polytope(framework)
    m = rigidity_matrix_poly(framework, allow_degenerate=allow_degenerate)
    res = svd_analysis(m, tol)
    report = report_from_rank(res, framework.n, framework.d, len(framework.graph.edges))
    if not allow_degenerate and framework.d == 2 and norm.s == 2:
        crit = spanning_tree_criteria(framework)
        if crit.sufficient_holds and not report.is_rigid:
            raise VerdictCrossCheckError(
                "two spanning colour classes but numerical rank says flexible"
            )
        if report.is_rigid and not all(crit.colour_spans[k] for k in crit.used_colours):
            raise VerdictCrossCheckError(
                "numerically rigid but a used colour class does not span"
            )
    return report


@dataclass(frozen=True)
class TreeCriteria:
    """Spanning behaviour of the monochrome subgraphs.

    colour_spans[k] says whether the colour-k subgraph is a connected
    spanning subgraph; sufficient_holds whether at least d classes span
    (which forces rigidity); spanning_tree_pair whether, for two facets
    in the plane, the two classes are edge-disjoint spanning trees (the
    minimal-rigidity criterion).
    """

    colour_spans: dict[int, bool]
    used_colours: tuple[int, ...]
    sufficient_holds: bool
    spanning_tree_pair: bool
    trees: tuple[tuple[Edge, ...], ...] | None


def spanning_tree_criteria(framework: Framework) -> TreeCriteria:
    norm = _require_polytope(framework)
    colouring = colour_framework(framework)
    if not colouring.well_positioned:
        raise NotWellPositionedError(colouring.offending_edges)
    n, d = framework.n, framework.d
    spans: dict[int, bool] = {}
    class_edges: dict[int, tuple[Edge, ...]] = {}
    for k in range(1, norm.s + 1):
        class_edges[k] = colouring.monochrome_edges(k)
        spans[k] = spanning_tree_of(n, class_edges[k]) is not None
    spanning = [k for k in range(1, norm.s + 1) if spans[k]]
    sufficient = len(spanning) >= d
    trees = None
    if sufficient:
        trees = tuple(spanning_tree_of(n, class_edges[k]) for k in spanning[:d])
    pair = False
    if d == 2 and norm.s == 2 and spans[1] and spans[2]:
        pair = all(len(class_edges[k]) == n - 1 for k in (1, 2))
    return TreeCriteria(spans, colouring.used_colours(), sufficient, pair, trees)


def partition_flex_witness(framework: Framework, colour: int) -> np.ndarray:
    """Kernel vector that is zero on one side of a partition uncut by the
    given colour, and a fixed vector orthogonal to the other used facets
    on the rest.  Requires the colour class to miss spanning the graph."""
    norm = _require_polytope(framework)
    if not 1 <= colour <= norm.s:
        raise DimensionMismatchError(f"colour must be in 1..{norm.s}, got {colour}")
    colouring = colour_framework(framework)
    if not colouring.well_positioned:
        raise NotWellPositionedError(colouring.offending_edges)
    n, d = framework.n, framework.d
    k_edges = colouring.monochrome_edges(colour)
    components = union_components(n, k_edges)
    if len(components) == 1:
        raise ColourSpansError(f"colour {colour} spans the vertex set; no partition exists")
    other_facets = [norm.facets[k - 1] for k in colouring.used_colours() if k != colour]
    if other_facets:
        res = svd_analysis(np.array(other_facets))
        if res.nullity == 0:
            raise WitnessUnavailableError(
                "the other used facet directions span the space; no orthogonal direction exists"
            )
        z = res.nullspace[0]
    else:
        z = np.zeros(d)
        z[0] = 1.0
    side_one = set(components[0])
    u = np.zeros((n, d))
    for v in range(n):
        if v not in side_one:
            u[v] = z
    return u.ravel()


def change_to_standard_facets(framework: Framework) -> Framework:
    """Isometrically remap so the facets become the standard basis.

    For a square spanning facet matrix B, the map x -> B x carries the
    norm max_k |x . b_k| to the coordinatewise max norm, preserving every
    rigidity verdict and the framework colouring.
    """
    norm = _require_polytope(framework)
    if norm.s != norm.d:
        raise UnsupportedNormError("standard-facet remap needs exactly d facet vectors")
    points = framework.placement @ norm.facets.T
    return Framework(framework.graph, points, PolytopeNorm(np.eye(norm.d)))
