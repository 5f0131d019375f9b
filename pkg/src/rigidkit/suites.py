"""Property suites at desk scale, shared by the CLI and the test gate.

Each runner exercises one cluster of claims on seeded random instances
and returns a SuiteReport with per-check verdicts plus per-case rows
suitable for a CSV dump.  Tolerances are pinned here:

* sparsity verdicts must agree exactly between the pebble game and the
  exhaustive oracle;
* lq ranks use the default SVD policy with the 10x stability probe;
* reported nontrivial flexes, rescaled to amplitude 0.01, must drive the
  finite-difference deviation ratio monotonically below 1e-6 at t = 1e-5
  (lq), and below 1e-12 throughout for facet-aligned polytopic flexes and
  for translations;
* partition witnesses must sit in the kernel with residual < 1e-9 while
  keeping a relative distance > 1e-6 from the translation space.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .canonical import canonical_form
from .construct import PlacementParams, construct_coloured_placement
from .errors import NotTightError
from .frameworks import Framework, finite_difference_flex_check, nontrivial_flex
from .graph import (
    Graph,
    K1,
    SparsityParams,
    TIGHT_2_2,
    canonical_edge,
    complete_graph,
    is_sparse_bruteforce,
    is_sparse_pebble,
    random_connected_graph,
)
from .linalg import translation_residual
from .lq import analyze, apply_linear_isometry, random_signed_permutation, sample_regular_placement
from .moves import MoveSequence, VK4Move, generate_tight_graph
from .norms import LqNorm, PolytopeNorm, linf_norm
from .polytope import (
    analyze_poly,
    change_to_standard_facets,
    colour_framework,
    partition_flex_witness,
    rigidity_matrix_poly,
    spanning_tree_criteria,
)
from .reduce import reduce_to_k1
from .rng import rng_for

FD_GRID = (1e-2, 1e-3, 1e-4, 1e-5)
FD_AMPLITUDE = 0.01  # flexes are rescaled to this Euclidean norm before the ratio test
FD_FINAL_RATIO = 1e-6
# deviations this small are zero at double precision (edge lengths are O(1));
# below it the ratio sequence only measures rounding noise
FD_NOISE_FLOOR = 1e-13
EXACT_DEVIATION = 1e-12
WITNESS_RESIDUAL = 1e-9
WITNESS_TRANSLATION_GAP = 1e-6


@dataclass
class CheckResult:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list[CheckResult] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, detail: str = ""):
        self.checks.append(CheckResult(label, bool(passed), detail))

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            lines.append(f"[{status}] {self.name}: {c.label}{detail}")
        return lines


def _fd_ratio_ok(framework: Framework, u: np.ndarray) -> tuple[bool, float]:
    """Monotone-decreasing deviation ratio ending below the pinned bound.

    Monotonicity is required while the deviation is measurable; once it
    falls below the double-precision noise floor it must simply stay
    there.  Non-flex directions never reach the floor (their first-order
    deviation dominates), so the floor cannot mask a failure.
    """
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u) * FD_AMPLITUDE
    table = finite_difference_flex_check(framework, u, FD_GRID)
    devs = table.max_deviation()
    ratios = table.max_ratio()
    if ratios[-1] >= FD_FINAL_RATIO:
        return False, float(ratios[-1])
    for i in range(1, len(devs)):
        if devs[i] <= FD_NOISE_FLOOR:
            ok = bool(np.all(devs[i:] <= FD_NOISE_FLOOR))
            return ok, float(ratios[-1])
        if ratios[i] >= ratios[i - 1]:
            return False, float(ratios[-1])
    return True, float(ratios[-1])


def _translation_dev_ok(framework: Framework) -> bool:
    n, d = framework.n, framework.d
    dev = 0.0
    for k in range(d):
        u = np.zeros((n, d))
        u[:, k] = 1.0
        table = finite_difference_flex_check(framework, u.ravel(), FD_GRID)
        if table.deviations.size:
            dev = max(dev, float(table.deviations.max()))
    return dev <= EXACT_DEVIATION


# -- criterion 1: pebble game vs exhaustive oracle -----------------------

def _all_connected_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        try:
            yield Graph(n, edges)
        except Exception:
            continue


def _witness_violates(g: Graph, p: SparsityParams, witness) -> bool:
    members = set(witness)
    count = sum(1 for u, v in g.edges if u in members and v in members)
    return count >= 1 and count > p.k * len(members) - p.l


def _verdicts_agree(g: Graph, p: SparsityParams) -> bool:
    """Flags must match exactly; each reported witness must itself violate
    the count (witness subsets are not unique, so they are validated, not
    compared)."""
    a = is_sparse_pebble(g, p)
    b = is_sparse_bruteforce(g, p)
    if (a.is_sparse, a.is_tight) != (b.is_sparse, b.is_tight):
        return False
    for v in (a, b):
        if v.witness is not None and not _witness_violates(g, p, v.witness):
            return False
    return True


def run_oracle_suite(seed: int = 0) -> SuiteReport:
    t0 = time.time()
    report = SuiteReport("oracle")
    params = [SparsityParams(2, 2), SparsityParams(2, 3), SparsityParams(2, 1)]
    mismatches = 0
    total = 0
    for n in range(1, 7):
        for g in _all_connected_graphs(n):
            for p in params:
                total += 1
                if not _verdicts_agree(g, p):
                    mismatches += 1
    report.add("exhaustive n<=6 agreement", mismatches == 0, f"{total - mismatches}/{total}")
    rng = rng_for(seed, 1)
    rand_total = 0
    rand_bad = 0
    for i in range(200):
        n = int(rng.integers(2, 11))
        g = random_connected_graph(n, int(rng.integers(0, 2 * n + 1)), rng)
        for p in params:
            rand_total += 1
            if not _verdicts_agree(g, p):
                rand_bad += 1
        report.rows.append({"case": f"random-{i}", "n": n, "edges": len(g.edges)})
    report.add("random n<=10 agreement", rand_bad == 0, f"{rand_total - rand_bad}/{rand_total}")
    report.elapsed = time.time() - t0
    report.add("runtime < 60 s", report.elapsed < 60.0, f"{report.elapsed:.1f}s")
    return report


# -- criterion 2 (+6): small complete graphs under lq --------------------

def run_lq_small_suite(seed: int = 0) -> SuiteReport:
    t0 = time.time()
    report = SuiteReport("lq-small")
    fd_ok = True
    transl_ok = True
    for qi, q in enumerate((1.5, 3.0, 5.0)):
        norm = LqNorm(q)
        for gi, (g, want_nullity) in enumerate(((complete_graph(2), None), (complete_graph(3), 3))):
            flexible = 0
            nullity_ok = 0
            for trial in range(20):
                rng = rng_for(seed, 2, qi, gi, trial)
                f = Framework(g, rng.uniform(-1, 1, (g.n, 2)), norm)
                rep = analyze(f)
                if not rep.is_rigid:
                    flexible += 1
                if want_nullity is None or rep.nullity == want_nullity:
                    nullity_ok += 1
                u = nontrivial_flex(rep, g.n, 2)
                if u is None:
                    fd_ok = False
                else:
                    ok, _ = _fd_ratio_ok(f, u)
                    fd_ok = fd_ok and ok
                transl_ok = transl_ok and _translation_dev_ok(f)
            name = f"K{g.n} q={q}"
            report.add(f"{name} flexible 20/20", flexible == 20, f"{flexible}/20")
            if want_nullity is not None:
                report.add(f"{name} nullity {want_nullity}", nullity_ok == 20, f"{nullity_ok}/20")
            report.rows.append({"case": name, "flexible": flexible})
        k4 = complete_graph(4)
        rank6 = 0
        deletions_ok = True
        for trial in range(100):
            rng = rng_for(seed, 3, qi, trial)
            f = Framework(k4, rng.uniform(-1, 1, (4, 2)), norm)
            rep = analyze(f)
            if rep.rank == 6:
                rank6 += 1
                for e in k4.edges:
                    if analyze(f.with_edge_removed(e)).rank != 5:
                        deletions_ok = False
            transl_ok = transl_ok and _translation_dev_ok(f)
        report.add(f"K4 q={q} rank 6 in >=99/100", rank6 >= 99, f"{rank6}/100")
        report.add(f"K4 q={q} deletions drop to rank 5", deletions_ok)
        report.rows.append({"case": f"K4 q={q}", "rank6": rank6})
    report.add("flex finite-difference consistency", fd_ok)
    report.add("translation deviations <= 1e-12", transl_ok)
    report.elapsed = time.time() - t0
    return report


# -- criterion 3 (+6): tight graphs are rigid under q = 3 -----------------

def run_lq_tight_suite(seed: int = 0) -> SuiteReport:
    t0 = time.time()
    report = SuiteReport("lq-tight")
    norm = LqNorm(3.0)
    tight_ok = 0
    flexible_ok = 0
    dependent_ok = 0
    fd_ok = True
    graphs: list[Graph] = []
    for i in range(50):
        target = 4 + i % 7  # the clique expansion overshoots by at most 2, so n <= 12
        g, _ = generate_tight_graph(target, "A", seed=(seed << 8) + i)
        graphs.append(g)
        pts, rank = sample_regular_placement(g, norm, d=2, seed=(seed << 8) + i, trials=20)
        ok = rank == 2 * g.n - 2
        tight_ok += ok
        report.rows.append({"case": f"tight-{i}", "n": g.n, "rank": rank, "target": 2 * g.n - 2})
        if not ok:
            continue
    report.add("50 tight graphs reach rank 2n-2", tight_ok == 50, f"{tight_ok}/50")

    rng = rng_for(seed, 4)
    for i, g in enumerate(graphs):
        e = g.edges[int(rng.integers(len(g.edges)))]
        sub = Graph(g.n, tuple(x for x in g.edges if x != e))
        pts, rank = sample_regular_placement(sub, norm, d=2, seed=(seed << 8) + 1000 + i, trials=20)
        if rank < 2 * sub.n - 2:
            flexible_ok += 1
            f = Framework(sub, pts, norm)
            u = nontrivial_flex(analyze(f), sub.n, 2)
            if u is None:
                fd_ok = False
            else:
                ok, _ = _fd_ratio_ok(f, u)
                fd_ok = fd_ok and ok
        report.rows.append({"case": f"sparse-{i}", "n": sub.n, "rank": rank})
    report.add("50 sparse-not-tight graphs flexible", flexible_ok == 50, f"{flexible_ok}/50")

    over = [g for g in graphs if g.n >= 5][:20]
    for i, g in enumerate(over):
        non_edges = [e for e in itertools.combinations(range(g.n), 2) if e not in g.edge_set]
        e = non_edges[int(rng.integers(len(non_edges)))]
        sup = Graph(g.n, g.edges + (e,))
        assert not is_sparse_pebble(sup, TIGHT_2_2).is_sparse
        _, rank = sample_regular_placement(sup, norm, d=2, seed=(seed << 8) + 2000 + i, trials=20)
        if rank < len(sup.edges):
            dependent_ok += 1
        report.rows.append({"case": f"violating-{i}", "n": sup.n, "rank": rank, "rows": len(sup.edges)})
    report.add("20 count-violating graphs have dependent rows", dependent_ok == 20, f"{dependent_ok}/20")
    report.add("flex finite-difference consistency", fd_ok)
    report.elapsed = time.time() - t0
    return report


# -- criteria 4 + 5 (+6): polytopic tree equivalence ----------------------

def run_poly_tree_suite(seed: int = 0) -> SuiteReport:
    t0 = time.time()
    report = SuiteReport("poly-tree")
    norm = linf_norm()

    # exact unit-cell reproduction with epsilon = 0.1, r = 1
    seq = MoveSequence(K1, (VK4Move(0, ()),))
    f = construct_coloured_placement(seq, norm, PlacementParams(epsilon=0.1, r=1.0), seed=seed)
    col = colour_framework(f)
    expected = {
        canonical_edge(0, 1): 1, canonical_edge(0, 2): 1, canonical_edge(2, 3): 1,
        canonical_edge(0, 3): 2, canonical_edge(1, 2): 2, canonical_edge(1, 3): 2,
    }
    rep = analyze_poly(f)
    report.add("skewed unit cell colours exact", col.colours == expected, f"{sorted(col.colours.items())}")
    report.add("skewed unit cell rank 6", rep.rank == 6 and rep.is_minimal)

    constructed_ok = 0
    fd_ok = True
    for i in range(50):
        target = 4 + i % 7
        g, seq = generate_tight_graph(target, "B", seed=(seed << 8) + 5000 + i)
        f = construct_coloured_placement(seq, norm, seed=(seed << 8) + i)
        col = colour_framework(f)
        crit = spanning_tree_criteria(f)
        rep = analyze_poly(f)
        tight = is_sparse_pebble(g, TIGHT_2_2).is_tight
        deletions_flexible = all(
            not analyze_poly(f.with_edge_removed(e)).is_rigid for e in g.edges
        )
        ok = (
            col.well_positioned
            and crit.spanning_tree_pair
            and rep.is_minimal
            and tight
            and deletions_flexible
        )
        constructed_ok += ok
        fd_ok = fd_ok and _translation_dev_ok(f)
        report.rows.append({"case": f"construct-{i}", "n": g.n, "rank": rep.rank, "ok": bool(ok)})
    report.add("50 constructed frameworks minimally rigid with tree pair",
               constructed_ok == 50, f"{constructed_ok}/50")

    witnesses = 0
    attempts = 0
    rng = rng_for(seed, 6)
    while witnesses < 20 and attempts < 400:
        attempts += 1
        g, _ = generate_tight_graph(4 + attempts % 5, "B", seed=(seed << 9) + attempts)
        f = Framework(g, rng.uniform(-1, 1, (g.n, 2)), norm)
        col = colour_framework(f)
        if not col.well_positioned:
            continue
        crit = spanning_tree_criteria(f)
        missing = [k for k in (1, 2) if not crit.colour_spans[k]]
        if not missing:
            continue
        u = partition_flex_witness(f, missing[0])
        m = rigidity_matrix_poly(f)
        residual = float(np.abs(m @ u).max())
        gap = translation_residual(u, g.n, 2) / np.linalg.norm(u)
        rep = analyze_poly(f)
        dev = finite_difference_flex_check(
            f, u / np.linalg.norm(u) * FD_AMPLITUDE, FD_GRID
        ).deviations.max()
        if (
            residual < WITNESS_RESIDUAL
            and gap > WITNESS_TRANSLATION_GAP
            and not rep.is_rigid
            and dev <= EXACT_DEVIATION
        ):
            witnesses += 1
        report.rows.append({"case": f"witness-{attempts}", "n": g.n, "residual": residual})
    report.add("20 missing-tree placements flexible with verified witness",
               witnesses == 20, f"{witnesses}/20 in {attempts} attempts")
    report.add("polytopic flex deviations exact", fd_ok)
    report.elapsed = time.time() - t0
    return report


# -- criterion 7: isometry invariance -------------------------------------

def run_invariance_suite(seed: int = 0) -> SuiteReport:
    t0 = time.time()
    report = SuiteReport("invariants")
    perm_ok = True
    shift_ok = True
    for qi, q in enumerate((1.5, 3.0)):
        norm = LqNorm(q)
        for gi in range(5):
            g, _ = generate_tight_graph(4 + gi, "A", seed=(seed << 8) + 7000 + gi)
            rng = rng_for(seed, 7, qi, gi)
            f = Framework(g, rng.uniform(-1, 1, (g.n, 2)), norm)
            base = analyze(f).rank
            for _ in range(5):
                m = random_signed_permutation(2, rng)
                shift = rng.uniform(-5, 5, 2)
                if analyze(apply_linear_isometry(f, m)).rank != base:
                    perm_ok = False
                if analyze(apply_linear_isometry(f, np.eye(2), shift)).rank != base:
                    shift_ok = False
                both = apply_linear_isometry(f, m, shift)
                if analyze(both).rank != base:
                    perm_ok = False
            report.rows.append({"case": f"lq-iso q={q} g{gi}", "rank": base})
    report.add("signed permutations preserve lq rank", perm_ok)
    report.add("translations preserve lq rank", shift_ok)

    basis_ok = 0
    rng = rng_for(seed, 8)
    for i in range(20):
        while True:
            b = rng.uniform(-1, 1, (2, 2))
            if abs(np.linalg.det(b)) > 0.2:
                break
        norm = PolytopeNorm(b)
        g, seq = generate_tight_graph(4 + i % 5, "B", seed=(seed << 8) + 8000 + i)
        f = construct_coloured_placement(seq, norm, seed=(seed << 8) + 300 + i)
        fs = change_to_standard_facets(f)
        rep, reps = analyze_poly(f), analyze_poly(fs)
        same = (rep.is_rigid, rep.is_minimal, rep.rank) == (reps.is_rigid, reps.is_minimal, reps.rank)
        # a flexible companion: drop one edge from both sides
        e = g.edges[int(rng.integers(len(g.edges)))]
        repf = analyze_poly(f.with_edge_removed(e))
        repsf = analyze_poly(fs.with_edge_removed(e))
        same = same and (repf.is_rigid, repf.rank) == (repsf.is_rigid, repsf.rank)
        basis_ok += same
        report.rows.append({"case": f"basis-{i}", "rank": rep.rank, "ok": bool(same)})
    report.add("change of basis preserves polytopic verdicts", basis_ok == 20, f"{basis_ok}/20")
    report.elapsed = time.time() - t0
    return report


# -- criterion 8: constructive round trips --------------------------------

def run_roundtrip_suite(seed: int = 0) -> SuiteReport:
    t0 = time.time()
    report = SuiteReport("roundtrip")
    reduced_ok = 0
    for i in range(50):
        scheme = "A" if i % 2 == 0 else "B"
        g, _ = generate_tight_graph(4 + i % 5, scheme, seed=(seed << 8) + 9000 + i)
        seq = reduce_to_k1(g)
        ok = canonical_form(seq.replay()) == canonical_form(g)
        reduced_ok += ok
        report.rows.append({"case": f"reduce-{i}", "n": g.n, "moves": len(seq.moves), "ok": bool(ok)})
    report.add("50 tight graphs reduce and replay", reduced_ok == 50, f"{reduced_ok}/50")

    rejected = 0
    non_tight: list[Graph] = [complete_graph(2), complete_graph(3), complete_graph(5),
                              Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))]
    rng = rng_for(seed, 9)
    i = 0
    while len(non_tight) < 20:
        g, _ = generate_tight_graph(5 + i % 4, "A", seed=(seed << 8) + 9500 + i)
        if i % 2 == 0:
            e = g.edges[int(rng.integers(len(g.edges)))]
            try:
                cand = Graph(g.n, tuple(x for x in g.edges if x != e))
            except Exception:
                i += 1
                continue
        else:
            non_edges = [e for e in itertools.combinations(range(g.n), 2) if e not in g.edge_set]
            e = non_edges[int(rng.integers(len(non_edges)))]
            cand = Graph(g.n, g.edges + (e,))
        non_tight.append(cand)
        i += 1
    for g in non_tight:
        try:
            reduce_to_k1(g)
        except NotTightError:
            rejected += 1
    report.add("20 non-tight graphs rejected", rejected == 20, f"{rejected}/20")
    report.elapsed = time.time() - t0
    return report


SUITE_GROUPS: dict[str, tuple] = {
    "oracle": (run_oracle_suite,),
    "thm38": (run_lq_small_suite, run_lq_tight_suite),
    "thm410": (run_poly_tree_suite,),
    "invariants": (run_invariance_suite, run_roundtrip_suite),
}


def run_suite_group(name: str, seed: int = 0) -> list[SuiteReport]:
    if name not in SUITE_GROUPS:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITE_GROUPS)}")
    return [runner(seed) for runner in SUITE_GROUPS[name]]
