"""Norm families: lq norms (1 < q < oo, q != 2) and polytopic norms.

A polytopic norm is ||a|| = max_k |a . b_k| for a spanning family of facet
vectors b_1..b_s; the l1 and l-infinity norms are the two-facet planar
special cases.  The Euclidean q = 2 is rejected outright: its space of
trivial motions is larger (rotations), so every rank criterion used here
would silently misclassify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedNormError
from .linalg import svd_analysis

# Exact facet choices documented for the CLI aliases.  The l1 facets need
# no scaling: max(|a1 + a2|, |a1 - a2|) = |a1| + |a2| identically.
LINF_FACETS_2D = ((1.0, 0.0), (0.0, 1.0))
L1_FACETS_2D = ((1.0, 1.0), (1.0, -1.0))

# q values this close to 1 (or large enough) make the q-1 powers badly
# conditioned; the CLI warns and points at the polytopic model instead.
Q_ILL_CONDITIONED_LOW = 1.05
Q_ILL_CONDITIONED_HIGH = 50.0


@dataclass(frozen=True)
class LqNorm:
    q: float

    def __post_init__(self):
        q = float(self.q)
        object.__setattr__(self, "q", q)
        if q == 2.0:
            raise UnsupportedNormError(
                "q = 2 is Euclidean: rotations are isometries there and the "
                "translation-only rank criterion does not apply"
            )
        if q == 1.0 or math.isinf(q):
            raise UnsupportedNormError(
                "q = 1 and q = infinity are polytopic norms; use PolytopeNorm "
                "(facets (1,1),(1,-1) for l1, (1,0),(0,1) for l-infinity)"
            )
        if not (math.isfinite(q) and q > 1.0):
            raise UnsupportedNormError(f"q must satisfy 1 < q < infinity, got {q!r}")


@dataclass(frozen=True, eq=False)
class PolytopeNorm:
    """Norm ||a|| = max_k |a . b_k| for facet vectors b_k (rows of ``facets``)."""

    facets: np.ndarray

    def __post_init__(self):
        f = np.array(self.facets, dtype=float)
        if f.ndim != 2 or f.shape[0] < 1:
            raise UnsupportedNormError(f"facets must be a non-empty 2-D array, got shape {f.shape}")
        if not np.all(np.isfinite(f)):
            raise UnsupportedNormError("facet vectors must be finite")
        if np.any(np.all(f == 0.0, axis=1)):
            raise UnsupportedNormError("facet vectors must be nonzero")
        for i in range(f.shape[0]):
            for j in range(i + 1, f.shape[0]):
                if np.array_equal(f[i], f[j]) or np.array_equal(f[i], -f[j]):
                    # b and -b define the same constraint |a.b| <= 1; keeping
                    # both would tie every vector and nothing could be coloured
                    raise UnsupportedNormError(f"facets {i} and {j} are duplicates (up to sign)")
        if svd_analysis(f).rank < f.shape[1]:
            raise UnsupportedNormError("facet vectors must span the ambient space")
        f.setflags(write=False)
        object.__setattr__(self, "facets", f)

    @property
    def s(self) -> int:
        return self.facets.shape[0]

    @property
    def d(self) -> int:
        return self.facets.shape[1]


NormSpec = LqNorm | PolytopeNorm


def linf_norm(d: int = 2) -> PolytopeNorm:
    return PolytopeNorm(np.eye(d))


def l1_norm_2d() -> PolytopeNorm:
    return PolytopeNorm(np.array(L1_FACETS_2D))


def signed_power(a, k: float) -> np.ndarray:
    """Componentwise sgn(a_i) |a_i|**k (the gradient direction of the
    lq length along a coordinate)."""
    if k <= 0:
        raise ValueError(f"exponent must be positive, got {k}")
    a = np.asarray(a, dtype=float)
    return np.sign(a) * np.abs(a) ** k


def lq_length(a, q: float) -> float:
    """(sum |a_i|**q)**(1/q); defined for any q >= 1."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    a = np.asarray(a, dtype=float)
    if math.isinf(q):
        return float(np.max(np.abs(a))) if a.size else 0.0
    return float(np.sum(np.abs(a) ** q) ** (1.0 / q))


def polytope_length(a, norm: PolytopeNorm) -> float:
    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(norm.facets @ a)))


def max_facet_index(a, norm: PolytopeNorm, rel_tol: float = 0.0) -> int | None:
    """0-based index of the unique maximizing facet, or None on a tie.

    With rel_tol > 0 a tie is declared when the top two values differ by
    less than rel_tol relative to the maximum.
    """
    dots = np.abs(norm.facets @ np.asarray(a, dtype=float))
    k = int(np.argmax(dots))
    top = float(dots[k])
    if top == 0.0:
        return None
    if norm.s == 1:
        return k
    second = float(np.max(np.delete(dots, k)))
    if top - second <= rel_tol * top:
        return None
    return k


def kappa(a, norm: PolytopeNorm, rel_tol: float = 0.0) -> np.ndarray:
    """The unique maximizing facet vector of ``a``, or the zero vector on a tie."""
    k = max_facet_index(a, norm, rel_tol)
    if k is None:
        return np.zeros(norm.d)
    return norm.facets[k].copy()


def norm_length(norm: NormSpec, a) -> float:
    if isinstance(norm, LqNorm):
        return lq_length(a, norm.q)
    if isinstance(norm, PolytopeNorm):
        return polytope_length(a, norm)
    raise UnsupportedNormError(f"unknown norm {norm!r}")
