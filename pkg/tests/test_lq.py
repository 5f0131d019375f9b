"""lq norms, rigidity matrices, rank analysis and flex checks."""

import numpy as np
import pytest

from rigidkit.errors import (
    CoincidentEndpointsError,
    DimensionMismatchError,
    NotSignedPermutationError,
    UnsupportedNormError,
)
from rigidkit.frameworks import Framework, finite_difference_flex_check, nontrivial_flex
from rigidkit.graph import K1, complete_graph
from rigidkit.linalg import numerical_rank, svd_analysis, translation_basis
from rigidkit.lq import (
    FlexClass,
    analyze,
    apply_linear_isometry,
    classify_flex,
    is_collinear,
    rigidity_matrix_lq,
    sample_regular_placement,
)
from rigidkit.norms import LqNorm, lq_length, signed_power
from rigidkit.rng import rng_for


def test_signed_power_examples():
    assert np.allclose(signed_power((-2, 3), 1), (-2, 3))
    assert np.allclose(signed_power((0, 0), 2), (0, 0))
    assert np.allclose(signed_power((-2, 3), 2), (-4, 9))


def test_signed_power_odd_symmetry():
    rng = rng_for(1)
    a = rng.normal(size=5)
    for k in (0.5, 1.7, 3.0):
        assert np.allclose(signed_power(-a, k), -signed_power(a, k))


def test_lq_length_examples():
    assert lq_length((3, 4), 2) == pytest.approx(5.0)
    assert lq_length((1, -1), 1) == pytest.approx(2.0)
    assert lq_length((1, -1), 3) == pytest.approx(2 ** (1 / 3))


def test_lq_norm_validation():
    with pytest.raises(UnsupportedNormError):
        LqNorm(2.0)
    with pytest.raises(UnsupportedNormError):
        LqNorm(1.0)
    with pytest.raises(UnsupportedNormError):
        LqNorm(float("inf"))
    with pytest.raises(UnsupportedNormError):
        LqNorm(0.5)
    assert LqNorm(3.0).q == 3.0


def test_matrix_k2_horizontal():
    f = Framework(complete_graph(2), [[0, 0], [1, 0]], LqNorm(3))
    assert np.allclose(rigidity_matrix_lq(f), [[-1, 0, 1, 0]])


def test_matrix_k2_diagonal():
    f = Framework(complete_graph(2), [[0, 0], [1, 1]], LqNorm(3))
    assert np.allclose(rigidity_matrix_lq(f), [[-1, -1, 1, 1]])


def test_matrix_annihilates_translations_exactly():
    rng = rng_for(5)
    for q in (1.5, 3.0, 4.5):
        g, n = complete_graph(4), 4
        f = Framework(g, rng.uniform(-1, 1, (n, 2)), LqNorm(q))
        m = rigidity_matrix_lq(f)
        t = translation_basis(n, 2)
        assert np.all(m @ t.T == 0.0)


def test_matrix_rows_match_length_derivative():
    # independent oracle: row . u must equal the numerical derivative of the
    # edge length along u, scaled by ||p_i - p_j||^(q-1)
    rng = rng_for(9)
    q = 3.0
    g = complete_graph(4)
    pts = rng.uniform(-1, 1, (4, 2))
    f = Framework(g, pts, LqNorm(q))
    m = rigidity_matrix_lq(f)
    u = rng.normal(size=8)
    h = 1e-6
    for row, (i, j) in enumerate(g.edges):
        uu = u.reshape(4, 2)
        plus = lq_length((pts[i] + h * uu[i]) - (pts[j] + h * uu[j]), q)
        minus = lq_length((pts[i] - h * uu[i]) - (pts[j] - h * uu[j]), q)
        derivative = (plus - minus) / (2 * h)
        scale = lq_length(pts[i] - pts[j], q) ** (q - 1)
        assert m[row] @ u == pytest.approx(derivative * scale, rel=1e-5, abs=1e-8)


def test_coincident_endpoints_rejected():
    with pytest.raises(CoincidentEndpointsError):
        Framework(complete_graph(2), [[1, 1], [1, 1]], LqNorm(3))


def test_numerical_rank_basics():
    rank, sv, tol = numerical_rank(np.zeros((3, 3)))
    assert rank == 0
    rank, sv, tol = numerical_rank(np.eye(3))
    assert rank == 3 and len(sv) == 3
    res = svd_analysis(np.zeros((0, 4)))
    assert res.rank == 0 and res.nullspace.shape == (4, 4)


def test_numerical_rank_k4():
    rng = rng_for(21)
    f = Framework(complete_graph(4), rng.uniform(-1, 1, (4, 2)), LqNorm(3))
    rank, _, _ = numerical_rank(rigidity_matrix_lq(f))
    assert rank == 6


def test_analyze_k3_flexible():
    rng = rng_for(2)
    f = Framework(complete_graph(3), rng.uniform(-1, 1, (3, 2)), LqNorm(3))
    rep = analyze(f)
    assert rep.nullity == 3 and not rep.is_rigid
    assert rep.rank + rep.nullity == 6
    assert rep.matrix_rows == 3 and rep.matrix_cols == 6


def test_analyze_k4_minimal():
    rng = rng_for(3)
    f = Framework(complete_graph(4), rng.uniform(-1, 1, (4, 2)), LqNorm(3))
    rep = analyze(f)
    assert rep.rank == 6 and rep.is_rigid and rep.is_minimal


def test_analyze_k1_rigid():
    rep = analyze(Framework(K1, [[0.2, -0.7]], LqNorm(3)))
    assert rep.rank == 0 and rep.is_rigid and rep.nullity == 2


def test_flex_basis_spans_kernel():
    rng = rng_for(4)
    f = Framework(complete_graph(3), rng.uniform(-1, 1, (3, 2)), LqNorm(3))
    rep = analyze(f)
    m = rigidity_matrix_lq(f)
    assert rep.flex_basis.shape == (3, 6)
    assert np.abs(m @ rep.flex_basis.T).max() < 1e-12


def test_classify_flex():
    rng = rng_for(6)
    f = Framework(complete_graph(3), rng.uniform(-1, 1, (3, 2)), LqNorm(3))
    assert classify_flex(f, np.tile([1.0, 0.0], 3)) is FlexClass.TRIVIAL
    assert classify_flex(f, np.zeros(6)) is FlexClass.TRIVIAL
    u = nontrivial_flex(analyze(f), 3, 2)
    assert classify_flex(f, u) is FlexClass.NONTRIVIAL
    assert classify_flex(f, rng.normal(size=6)) is FlexClass.NOT_A_FLEX
    with pytest.raises(DimensionMismatchError):
        classify_flex(f, np.zeros(5))


def test_sample_regular_placement():
    assert sample_regular_placement(complete_graph(4), LqNorm(3), seed=0, trials=20)[1] == 6
    assert sample_regular_placement(complete_graph(3), LqNorm(3), seed=0, trials=20)[1] == 3
    assert sample_regular_placement(K1, LqNorm(3), seed=0, trials=3)[1] == 0


def test_sample_rank_bounded_by_oracle_sweep():
    # 2n - d = 4 is unreachable for K3: the rank never exceeds |E| = 3
    for seed in range(20):
        _, rank = sample_regular_placement(complete_graph(3), LqNorm(3), seed=seed, trials=1)
        assert rank <= 3


def test_sample_deterministic():
    a = sample_regular_placement(complete_graph(4), LqNorm(3), seed=5, trials=7)
    b = sample_regular_placement(complete_graph(4), LqNorm(3), seed=5, trials=7)
    assert np.array_equal(a[0], b[0]) and a[1] == b[1]


def test_minimal_framework_has_independent_subgraph_rows():
    # minimality means all rows independent, so the row block of every
    # induced subgraph has full row rank
    import itertools

    from rigidkit.moves import generate_tight_graph

    g, _ = generate_tight_graph(6, "A", seed=2)
    pts, rank = sample_regular_placement(g, LqNorm(3), seed=2, trials=20)
    f = Framework(g, pts, LqNorm(3))
    rep = analyze(f)
    assert rep.is_minimal
    m = rigidity_matrix_lq(f)
    for size in (3, 4, 5):
        for subset in itertools.combinations(range(g.n), size):
            members = set(subset)
            rows = [r for r, (i, j) in enumerate(g.edges) if i in members and j in members]
            if not rows:
                continue
            sub_rank, _, _ = numerical_rank(m[rows])
            assert sub_rank == len(rows)


def test_rank_bound_over_samples():
    rng = rng_for(13)
    for _ in range(10):
        g = complete_graph(int(rng.integers(2, 6)))
        f = Framework(g, rng.uniform(-1, 1, (g.n, 2)), LqNorm(3))
        rep = analyze(f)
        assert rep.rank <= min(len(g.edges), 2 * g.n - 2)
        assert rep.nullity >= 2


def test_finite_difference_translation_zero():
    rng = rng_for(8)
    f = Framework(complete_graph(3), rng.uniform(-1, 1, (3, 2)), LqNorm(3))
    table = finite_difference_flex_check(f, np.tile([0.3, -0.8], 3), [1e-2, 1e-3, 1e-4, 1e-5])
    assert table.deviations.max() <= 1e-12


def test_finite_difference_separates_flexes():
    rng = rng_for(10)
    f = Framework(complete_graph(3), rng.uniform(-1, 1, (3, 2)), LqNorm(3))
    grid = [1e-2, 1e-3, 1e-4, 1e-5]
    u = nontrivial_flex(analyze(f), 3, 2) * 0.01
    ratios = finite_difference_flex_check(f, u, grid).max_ratio()
    assert np.all(np.diff(ratios) < 0) and ratios[-1] < 1e-6
    w = rng.normal(size=6)
    w = 0.01 * w / np.linalg.norm(w)
    bad = finite_difference_flex_check(f, w, grid).max_ratio()
    assert bad[-1] > 1e-4


def test_apply_linear_isometry():
    rng = rng_for(11)
    f = Framework(complete_graph(4), rng.uniform(-1, 1, (4, 2)), LqNorm(3))
    base = analyze(f).rank
    ident = apply_linear_isometry(f, np.eye(2))
    assert np.array_equal(ident.placement, f.placement)
    quarter_turn = np.array([[0.0, 1.0], [-1.0, 0.0]])  # (x, y) -> (y, -x)
    assert analyze(apply_linear_isometry(f, quarter_turn)).rank == base
    shifted = apply_linear_isometry(f, np.eye(2), shift=(5.0, 5.0))
    assert np.allclose(rigidity_matrix_lq(shifted), rigidity_matrix_lq(f), atol=1e-12)
    assert analyze(shifted).rank == base


def test_translation_of_exact_coordinates_is_bitwise():
    # rows depend only on coordinate differences, so a shift that keeps
    # every coordinate exactly representable leaves the matrix bit-identical
    pts = [[0.0, 0.0], [0.5, 0.25], [-0.75, 1.0], [1.0, -0.5]]
    f = Framework(complete_graph(4), pts, LqNorm(3))
    shifted = apply_linear_isometry(f, np.eye(2), shift=(5.0, 5.0))
    assert np.array_equal(rigidity_matrix_lq(shifted), rigidity_matrix_lq(f))


def test_apply_linear_isometry_rejects_rotation():
    f = Framework(complete_graph(2), [[0, 0], [1, 0]], LqNorm(3))
    theta = np.pi / 6
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    with pytest.raises(NotSignedPermutationError):
        apply_linear_isometry(f, rot)
    with pytest.raises(NotSignedPermutationError):
        apply_linear_isometry(f, np.array([[1.0, 0.0], [1.0, 0.0]]))


def test_analyze_d3_matrix_shape_and_kernel():
    # matrices are built for any ambient dimension
    rng = rng_for(14)
    g = complete_graph(4)
    f = Framework(g, rng.uniform(-1, 1, (4, 3)), LqNorm(3))
    m = rigidity_matrix_lq(f)
    assert m.shape == (6, 12)
    t = translation_basis(4, 3)
    assert np.all(m @ t.T == 0.0)


def test_is_collinear():
    assert is_collinear((0, 0), (1, 1), (2, 2))
    assert not is_collinear((0, 0), (1, 0), (0, 1))


def test_analyze_framework_dispatch():
    from rigidkit.analysis import analyze_framework
    from rigidkit.norms import linf_norm

    rng = rng_for(33)
    f_lq = Framework(complete_graph(4), rng.uniform(-1, 1, (4, 2)), LqNorm(3))
    assert analyze_framework(f_lq).rank == analyze(f_lq).rank
    f_poly = Framework(complete_graph(4), [[0, 0], [1, 0], [1, 0.9], [0, 1.1]], linf_norm())
    assert analyze_framework(f_poly).rank == 6


def test_numerical_rank_callable_policy():
    m = np.diag([1.0, 1e-5, 1e-12])
    rank_default, _, _ = numerical_rank(m)
    assert rank_default == 2
    rank_loose, _, tol = numerical_rank(m, tol=lambda smax, shape: 1e-3 * smax)
    assert rank_loose == 1 and tol == pytest.approx(1e-3)
    rank_abs, _, _ = numerical_rank(m, tol=1e-14)
    assert rank_abs == 3


def test_with_edge_removed_validates():
    from rigidkit.errors import EdgeNotInGraphError
    from rigidkit.graph import Graph

    f = Framework(complete_graph(3), [[0, 0], [1, 0], [2, 0.5]], LqNorm(3))
    sub = f.with_edge_removed((1, 0))
    assert sub.graph.edges == ((0, 2), (1, 2))
    with pytest.raises(EdgeNotInGraphError):
        sub.with_edge_removed((0, 1))
