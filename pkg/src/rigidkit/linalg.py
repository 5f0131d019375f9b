"""Numerical rank and nullspace for small dense matrices.

Rank is the number of singular values above a tolerance; the default
policy is max(rows, cols) * sigma_max * 2**-40.  A rank is *stable* when
it is unchanged at ten times the tolerance; unstable ranks flag the input
as numerically degenerate so callers can resample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RANK_TOL_SCALE = 2.0 ** -40
STABILITY_FACTOR = 10.0


def default_tolerance(sigma_max: float, shape: tuple[int, int]) -> float:
    return max(shape) * sigma_max * RANK_TOL_SCALE


@dataclass(frozen=True, eq=False)
class RankResult:
    rank: int
    singular_values: np.ndarray  # descending
    tolerance: float
    stable: bool
    nullspace: np.ndarray  # (nullity, cols), orthonormal rows

    @property
    def nullity(self) -> int:
        return self.nullspace.shape[0]


def svd_analysis(matrix: np.ndarray, tol=None) -> RankResult:
    """Full rank/nullspace analysis.  ``tol`` may be None (default policy),
    an absolute threshold, or a callable (sigma_max, shape) -> threshold."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        tau = float(tol) if isinstance(tol, (int, float)) else 0.0
        return RankResult(0, np.zeros(0), tau, True, np.eye(cols))
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    sigma_max = float(s[0])
    if tol is None:
        tau = default_tolerance(sigma_max, (rows, cols))
    elif callable(tol):
        tau = float(tol(sigma_max, (rows, cols)))
    else:
        tau = float(tol)
    rank = int(np.count_nonzero(s > tau))
    stable = rank == int(np.count_nonzero(s > STABILITY_FACTOR * tau))
    return RankResult(rank, s, tau, stable, vt[rank:])


def numerical_rank(matrix: np.ndarray, tol=None) -> tuple[int, np.ndarray, float]:
    """(rank, singular_values, tolerance_used) under the tolerance policy."""
    res = svd_analysis(matrix, tol)
    return res.rank, res.singular_values, res.tolerance


def translation_basis(n: int, d: int) -> np.ndarray:
    """Orthonormal basis (d rows, n*d cols) of the uniform translations."""
    basis = np.zeros((d, n * d))
    for k in range(d):
        basis[k, k::d] = 1.0 / np.sqrt(n)
    return basis


def translation_residual(u: np.ndarray, n: int, d: int) -> float:
    """Euclidean distance from u to the span of the uniform translations."""
    t = translation_basis(n, d)
    return float(np.linalg.norm(u - t.T @ (t @ u)))


def is_translation(u: np.ndarray, n: int, d: int, rel_tol: float = 1e-9) -> bool:
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        return True
    return translation_residual(u, n, d) <= rel_tol * norm
