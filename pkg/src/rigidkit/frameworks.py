"""Bar-joint frameworks and rigidity reports.

A framework is a graph, a placement of its vertices in R^d, and a norm.
The rigidity report summarizes the kernel of a rigidity matrix: its rank,
the flex basis, and the verdicts is_rigid (rank = dn - d, i.e. only the
d-dimensional translation space survives) and is_minimal (rigid with all
rows independent).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CoincidentEndpointsError, DimensionMismatchError, EdgeNotInGraphError
from .graph import Graph
from .linalg import RankResult, translation_basis, translation_residual
from .norms import NormSpec, norm_length


@dataclass(frozen=True, eq=False)
class Framework:
    graph: Graph
    placement: np.ndarray  # (n, d)
    norm: NormSpec

    def __post_init__(self):
        p = np.array(self.placement, dtype=float)
        if p.ndim != 2 or p.shape[0] != self.graph.n:
            raise DimensionMismatchError(
                f"placement must have shape ({self.graph.n}, d), got {p.shape}"
            )
        if not np.all(np.isfinite(p)):
            raise DimensionMismatchError("placement has non-finite coordinates")
        for u, v in self.graph.edges:
            if np.array_equal(p[u], p[v]):
                raise CoincidentEndpointsError(f"edge {(u, v)} has coincident endpoints")
        p.setflags(write=False)
        object.__setattr__(self, "placement", p)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return self.placement.shape[1]

    def edge_vector(self, edge) -> np.ndarray:
        i, j = edge
        return self.placement[i] - self.placement[j]

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        return np.array([norm_length(self.norm, self.edge_vector(e)) for e in self.graph.edges])

    def with_edge_removed(self, edge) -> "Framework":
        i, j = (edge[0], edge[1]) if edge[0] < edge[1] else (edge[1], edge[0])
        if (i, j) not in self.graph.edge_set:
            raise EdgeNotInGraphError(f"edge {(i, j)} is not in the graph")
        edges = tuple(e for e in self.graph.edges if e != (i, j))
        return Framework(Graph(self.n, edges), self.placement, self.norm)

    def translated(self, shift) -> "Framework":
        return Framework(self.graph, self.placement + np.asarray(shift, dtype=float), self.norm)


@dataclass(frozen=True, eq=False)
class RigidityReport:
    matrix_rows: int
    matrix_cols: int
    rank: int
    nullity: int
    flex_basis: np.ndarray  # (nullity, n*d), orthonormal rows spanning the kernel
    trivial_dim: int
    is_rigid: bool
    is_minimal: bool
    singular_values: np.ndarray
    tolerance_used: float


def report_from_rank(res: RankResult, n: int, d: int, edge_count: int) -> RigidityReport:
    rank = res.rank
    nullity = n * d - rank
    assert nullity == res.nullity
    rigid = rank == d * n - d
    return RigidityReport(
        matrix_rows=edge_count,
        matrix_cols=n * d,
        rank=rank,
        nullity=nullity,
        flex_basis=res.nullspace,
        trivial_dim=d,
        is_rigid=rigid,
        is_minimal=rigid and rank == edge_count,
        singular_values=res.singular_values,
        tolerance_used=res.tolerance,
    )


def nontrivial_flex(report: RigidityReport, n: int, d: int, rel_tol: float = 1e-9) -> np.ndarray | None:
    """A unit kernel vector orthogonal to the translations, or None.

    Deterministic: the dominant principal direction of the flex basis
    after projecting the translation space out.
    """
    basis = report.flex_basis
    if basis.shape[0] == 0:
        return None
    t = translation_basis(n, d)
    projected = basis - (basis @ t.T) @ t
    _, s, vt = np.linalg.svd(projected, full_matrices=False)
    if s.size == 0 or s[0] <= rel_tol:
        return None
    u = vt[0]
    # fix the sign for reproducibility
    lead = np.nonzero(np.abs(u) > 1e-12)[0]
    if lead.size and u[lead[0]] < 0:
        u = -u
    return u / np.linalg.norm(u)


@dataclass(frozen=True, eq=False)
class DeviationTable:
    """Per-edge |edge length at p + t*u  minus  edge length at p|."""

    t_grid: tuple[float, ...]
    edges: tuple[tuple[int, int], ...]
    deviations: np.ndarray  # (len(t_grid), |E|)

    def max_deviation(self) -> np.ndarray:
        return self.deviations.max(axis=1) if self.deviations.size else np.zeros(len(self.t_grid))

    def max_ratio(self) -> np.ndarray:
        return self.max_deviation() / np.asarray(self.t_grid)


def finite_difference_flex_check(framework: Framework, u, t_grid) -> DeviationTable:
    """Evaluate edge-length deviations along the straight path p + t*u.

    A first-order flex makes the deviation shrink superlinearly
    (deviation(t)/t -> 0); any other direction keeps the ratio bounded
    away from zero.  The check is independent of any rigidity matrix: it
    only evaluates the norm.
    """
    t_grid = tuple(float(t) for t in t_grid)
    if any(t <= 0 for t in t_grid):
        raise ValueError("t_grid must be positive")
    u = np.asarray(u, dtype=float).reshape(framework.n, framework.d)
    base = framework.edge_lengths
    rows = []
    for t in t_grid:
        moved = framework.placement + t * u
        lengths = np.array(
            [norm_length(framework.norm, moved[i] - moved[j]) for i, j in framework.graph.edges]
        )
        rows.append(np.abs(lengths - base))
    dev = np.array(rows) if rows else np.zeros((0, len(framework.graph.edges)))
    return DeviationTable(t_grid, framework.graph.edges, dev)


def classify_flex_residual(u: np.ndarray, n: int, d: int) -> float:
    return translation_residual(np.asarray(u, dtype=float), n, d)
