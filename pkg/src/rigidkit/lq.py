"""Rigidity analysis for frameworks under lq norms.

The rigidity matrix has one row per edge; the row for edge v_i v_j
carries the signed power (p_i - p_j)^(q-1) in the i block and its
negative in the j block.  Its kernel is exactly the space of first-order
length-preserving velocity assignments, which always contains the d
uniform translations, so a framework is rigid iff the rank is dn - d.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DimensionMismatchError, NotSignedPermutationError, UnsupportedNormError
from .frameworks import Framework, RigidityReport, report_from_rank
from .graph import Graph
from .linalg import is_translation, svd_analysis
from .norms import LqNorm, signed_power
from .rng import rng_for

# relative residual below which R u is considered zero when classifying
FLEX_RESIDUAL_REL_TOL = 1e-8
TRIVIAL_REL_TOL = 1e-9
COLLINEAR_REL_TOL = 1e-9


def _require_lq(framework: Framework) -> LqNorm:
    if not isinstance(framework.norm, LqNorm):
        raise UnsupportedNormError("this operation applies to lq frameworks only")
    return framework.norm


def rigidity_matrix_lq(framework: Framework) -> np.ndarray:
    """|E| x nd matrix, rows in canonical edge order."""
    norm = _require_lq(framework)
    n, d = framework.n, framework.d
    m = np.zeros((len(framework.graph.edges), n * d))
    for row, (i, j) in enumerate(framework.graph.edges):
        entry = signed_power(framework.placement[i] - framework.placement[j], norm.q - 1.0)
        m[row, i * d:(i + 1) * d] = entry
        m[row, j * d:(j + 1) * d] = -entry
    return m


def analyze(framework: Framework, tol=None) -> RigidityReport:
    """Full rank/flex report for an lq framework."""
    _require_lq(framework)
    res = svd_analysis(rigidity_matrix_lq(framework), tol)
    return report_from_rank(res, framework.n, framework.d, len(framework.graph.edges))


class FlexClass(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    NOT_A_FLEX = "not_a_flex"


def classify_flex(framework: Framework, u, rel_tol: float = TRIVIAL_REL_TOL) -> FlexClass:
    """Classify a velocity assignment against the rigidity matrix kernel."""
    u = np.asarray(u, dtype=float).ravel()
    n, d = framework.n, framework.d
    if u.shape != (n * d,):
        raise DimensionMismatchError(f"expected a vector of length {n * d}, got {u.shape}")
    m = rigidity_matrix_lq(framework)
    norm_u = float(np.linalg.norm(u))
    if norm_u == 0.0:
        return FlexClass.TRIVIAL
    if m.size:
        sigma_max = float(np.linalg.norm(m, 2))
        residual = float(np.linalg.norm(m @ u))
        if residual > FLEX_RESIDUAL_REL_TOL * max(sigma_max, 1.0) * norm_u:
            return FlexClass.NOT_A_FLEX
    if is_translation(u, n, d, rel_tol):
        return FlexClass.TRIVIAL
    return FlexClass.NONTRIVIAL


def sample_regular_placement(
    graph: Graph,
    norm: LqNorm,
    d: int = 2,
    seed: int = 0,
    trials: int = 20,
) -> tuple[np.ndarray, int]:
    """Best placement over seeded uniform samples from [-1, 1]^(n x d).

    Placements at which the rank is unstable under the 10x tolerance
    probe are resampled within their trial.  Returns the placement with
    the maximum observed (stable) rank and that rank.
    """
    if not isinstance(norm, LqNorm):
        raise UnsupportedNormError("sampling applies to lq norms; polytopic verdicts are per-placement")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    best_points: np.ndarray | None = None
    best_rank = -1
    for trial in range(trials):
        rng = rng_for(seed, trial)
        res = None
        for _probe in range(8):
            points = rng.uniform(-1.0, 1.0, size=(graph.n, d))
            framework = Framework(graph, points, norm)
            res = svd_analysis(rigidity_matrix_lq(framework))
            if res.stable:
                break
        if res.rank > best_rank:
            best_rank = res.rank
            best_points = points
    assert best_points is not None
    return best_points, best_rank


def apply_linear_isometry(framework: Framework, matrix, shift=None) -> Framework:
    """Map every vertex by x -> M x (+ shift) for a signed permutation M.

    Signed permutations (plus translations) are exactly the isometries of
    the lq spaces handled here, so the rigidity matrix rank is unchanged.
    """
    _require_lq(framework)
    d = framework.d
    m = np.asarray(matrix, dtype=float)
    if m.shape != (d, d):
        raise NotSignedPermutationError(f"expected a {d}x{d} matrix, got {m.shape}")
    if not np.all(np.isin(m, (-1.0, 0.0, 1.0))):
        raise NotSignedPermutationError("entries must be -1, 0 or +1")
    nonzero = m != 0.0
    if not (np.all(nonzero.sum(axis=0) == 1) and np.all(nonzero.sum(axis=1) == 1)):
        raise NotSignedPermutationError("matrix must have exactly one nonzero entry per row and column")
    points = framework.placement @ m.T
    if shift is not None:
        shift = np.asarray(shift, dtype=float)
        if shift.shape != (d,):
            raise DimensionMismatchError(f"shift must have length {d}")
        points = points + shift
    return Framework(framework.graph, points, framework.norm)


def random_signed_permutation(d: int, rng: np.random.Generator) -> np.ndarray:
    perm = rng.permutation(d)
    signs = rng.choice((-1.0, 1.0), size=d)
    m = np.zeros((d, d))
    for k in range(d):
        m[k, perm[k]] = signs[k]
    return m


def is_collinear(p1, p2, p3, rel_tol: float = COLLINEAR_REL_TOL) -> bool:
    """Diagnostic planar collinearity test with a relative area threshold."""
    p1, p2, p3 = (np.asarray(p, dtype=float) for p in (p1, p2, p3))
    if not p1.shape == p2.shape == p3.shape == (2,):
        raise DimensionMismatchError("collinearity diagnostic is planar (three 2-vectors)")
    a = p2 - p1
    b = p3 - p1
    area = abs(a[0] * b[1] - a[1] * b[0])
    scale = max(float(np.linalg.norm(a)) * float(np.linalg.norm(b)), 1e-300)
    return area <= rel_tol * scale
