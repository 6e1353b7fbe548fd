"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import random
from fractions import Fraction
from functools import lru_cache

import networkx as nx
import pytest
from oracles import naive_extremal, naive_forbidden, naive_is_free

from configlab import fano_plane, is_g_free
from configlab.extremal import (
    REFERENCE_LIMITS,
    SearchConfig,
    compute_f,
    compute_g,
    gen_planted_free,
    gen_random_free,
    packing_number,
    ratio_table,
    steiner_triple_system,
)
from configlab.shadowbound import (
    build_intersection_graph,
    edge_bound_check,
    sample_connected_subsets,
    two_shadow,
)
from configlab.sparsifier import InvariantViolation, dense_hypotheses, extract_free_subgraph

PER_K = 200


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


@lru_cache(maxsize=None)
def exact(mode, n, k):
    return compute_f(n, k + 2, k) if mode == "f" else compute_g(n, k)


def _sizes():
    # most instances are small; the tail covers the rest of [10, 40]
    small = [10 + i % 16 for i in range(PER_K - 20)]
    large = [26 + i % 15 for i in range(20)]
    return small + large


@lru_cache(maxsize=None)
def corpus(k):
    """Extraction runs for one k as (name, input, output, trace, error)."""
    runs = []
    for i, n in enumerate(_sizes()):
        seed = 1000 * k + i
        kind = i % 3
        if kind == 0:
            h = gen_random_free(n, k, "f", seed=seed)
        else:
            h = gen_planted_free(n, k, seed=seed, multi=(kind == 2 or k == 3))
        try:
            out, trace = extract_free_subgraph(h, k)
            runs.append((f"k={k} n={n} seed={seed}", h, out, trace, None))
        except InvariantViolation as exc:
            runs.append((f"k={k} n={n} seed={seed}", h, None, None, str(exc)))
    return runs


def all_runs():
    return [(k, r) for k in (3, 4, 5) for r in corpus(k)]


# -- 1 ------------------------------------------------------------------------------------


def test_c01_exact_small_values(report):
    rows, bad = [], []
    for n in range(3, 10):
        rec = exact("f", n, 2)
        if n <= 6:
            ref, src = naive_extremal(n, naive_forbidden(2, "f")), "oracle"
        else:
            ref, src = packing_number(n), "packing"
        rows.append(f"{n}:{rec.value}")
        if not rec.exact or rec.value != ref:
            bad.append((n, rec.value, ref, src, rec.exact))
    report(1, not bad, f"f(n;4,2) for n=3..9 = {' '.join(rows)}; mismatches {bad}")


# -- 2 ------------------------------------------------------------------------------------


def test_c02_fano_equality(report):
    h = fano_plane()
    bound, holds = edge_bound_check(h, 2)
    ok = holds and bound == Fraction(7) and h.e == 7 and Fraction(1, 3) * 21 == bound
    report(2, ok, f"Fano e={h.e}, bound={bound} (exact)")


# -- 3, 4, 5 ---------------------------------------------------------------------------------


def test_c03_extraction_soundness(report):
    counts, failures = {}, []
    for k, (name, h, out, trace, err) in all_runs():
        counts[k] = counts.get(k, 0) + 1
        if err is not None:
            failures.append((name, err))
            continue
        pairs = naive_forbidden(k, "g") + ([(3, 2)] if out.multi_allowed else [])
        ok = is_g_free(out, k)
        if out.e <= 12:
            ok = ok and naive_is_free(out.edges, pairs)
        if not ok:
            failures.append((name, "output not g-free"))
    sizes = sorted({h.n for _, (_, h, *_) in all_runs()})
    ok = not failures and all(counts.get(k, 0) >= PER_K for k in (3, 4, 5))
    report(3, ok, f"instances per k {counts}, n in [{min(sizes)}, {max(sizes)}], failures {failures[:3]}")


def _recheck_step(h, alive, step, k):
    """Structural conclusions and per-step loss, recomputed from scratch."""
    vs = set(step.config_vertices)
    live = [e for e in h.edges if alive.issuperset(e)]
    meet = [e for e in live if vs & set(e)]
    by = {i: [e for e in meet if len(vs & set(e)) == i] for i in (1, 2, 3)}
    outside = [tuple(sorted(set(e) - vs)) for e in by[1]]
    g = nx.Graph()
    g.add_nodes_from(alive - vs)
    g.add_edges_from(outside)
    ell = step.ell
    checks = [
        len(by[3]) <= k - 1,
        not by[2],
        len(outside) == len(set(outside)),
        nx.is_forest(g) if g.number_of_nodes() else True,
        all(len(c) <= k - ell for c in nx.connected_components(g)),
        len(step.config_edges) == ell and len(vs) <= ell + 1,
        step.loss == len(meet),
        # k * loss <= (k - 1)(v - v(S)) + k(k - 1)
        k * len(meet) <= (k - 1) * (len(alive) - len(vs)) + k * (k - 1),
    ]
    return all(checks)


def test_c04_structural_conclusions(report):
    steps = bad = 0
    per_k = {}
    for k, (name, h, out, trace, err) in all_runs():
        if err is not None:
            bad += 1
            continue
        alive = set(range(h.n))
        for step in trace.steps:
            steps += 1
            per_k[k] = per_k.get(k, 0) + 1
            if not (_recheck_step(h, alive, step, k) and all(step.verdicts.values()) and step.loss_ok):
                bad += 1
            alive -= set(step.config_vertices)
        if sorted(alive) != list(trace.kept):
            bad += 1
    report(4, bad == 0 and steps > 0, f"{steps} extraction steps {per_k}, {bad} failing")


def test_c05_aggregate_loss(report):
    runs = bad = 0
    for k, (name, h, out, trace, err) in all_runs():
        runs += 1
        if err is not None:
            bad += 1
            continue
        v, v2, loss = h.n, out.n, h.e - out.e
        # loss <= (1/6)(1 - 1/k)(v - v')(v + v' + 2k), scaled by 6k
        if not 6 * k * loss <= (k - 1) * (v - v2) * (v + v2 + 2 * k) or not trace.aggregate_ok:
            bad += 1
    report(5, bad == 0, f"{runs} runs, {bad} failing")


# -- 6, 7 ------------------------------------------------------------------------------------


def g_free_corpus():
    graphs = [(k, out) for k, (_, _, out, _, err) in all_runs() if err is None]
    for k in (3, 4, 5):
        for seed in range(10):
            graphs.append((k, gen_random_free(12 + 2 * seed, k, "g", seed=seed)))
    graphs.append((2, fano_plane()))
    return graphs


def test_c06_shadow_exactness(report):
    rng = random.Random(6)
    samples = bad = graphs = 0
    for k, h in g_free_corpus():
        graphs += 1
        ig = build_intersection_graph(h)
        union, total = set(), 0
        for comp in ig.components:
            sh = two_shadow(h, comp)
            union |= sh
            total += len(sh)
            for sub in sample_connected_subsets(ig, comp, rng, 2 if len(comp) > 1 else 1):
                samples += 1
                span = {v for i in sub for v in h.edges[i]}
                if len(span) != len(sub) + 2 or len(two_shadow(h, sub)) != 2 * len(sub) + 1:
                    bad += 1
        if total != len(union):
            bad += 1
    report(6, bad == 0 and samples >= 1000, f"{graphs} graphs, {samples} connected samples, {bad} failing")


def test_c07_quadratic_form(report):
    checked = bad = 0
    for k in (2, 3, 4):
        for n in range(3, 10):
            rec = exact("g", n, k)
            checked += 1
            if not ((4 * k - 2) * rec.value <= (k - 1) * n * n and rec.exact):
                bad += 1
    for k, h in g_free_corpus():
        checked += 1
        if not (4 * k - 2) * h.e <= (k - 1) * h.n * h.n:
            bad += 1
    report(7, bad == 0, f"{checked} values and graphs checked against e <= (k-1)/(4k-2) v^2, {bad} failing")


# -- 8 -------------------------------------------------------------------------------------


def test_c08_dense_subgraph(report):
    triggered = unmet = bad = 0
    instances = [(k, h, out) for k, (_, h, out, _, err) in all_runs() if err is None]
    for n, k in ((33, 2), (75, 3)):
        h = steiner_triple_system(n)
        out, _ = extract_free_subgraph(h, k)
        instances.append((k, h, out))
    for k, h, out in instances:
        if not dense_hypotheses(h, k):
            unmet += 1
            continue
        triggered += 1
        v, e, v2, e2 = h.n, h.e, out.n, out.e
        # v' >= v / sqrt(4k) and e'/v'^2 >= e/v^2
        if not (4 * k * v2 * v2 >= v * v and v2 > 0 and e2 * v * v >= e * v2 * v2):
            bad += 1
    report(8, bad == 0, f"{triggered} instances triggered the conditional path, {unmet} did not meet hypotheses, {bad} failing")


# -- 9 -------------------------------------------------------------------------------------


def test_c09_ratio_table(report):
    table = ratio_table(2, range(3, 10))
    ref = REFERENCE_LIMITS[2]
    ratios_ok = all(row.ratio <= ref and row.exact for row in table.rows)
    annotated = "1/6" in table.to_csv()
    pairs = bad_pairs = 0
    for k in (2, 3, 4):
        for n in range(3, 10):
            pairs += 1
            if exact("g", n, k).value > exact("f", n, k).value:
                bad_pairs += 1
    ok = ratios_ok and annotated and bad_pairs == 0
    worst = max(table.rows, key=lambda r: r.ratio)
    report(9, ok, f"max ratio {worst.value}/{worst.n}^2 = {float(worst.ratio):.4f} <= 1/6; g <= f on {pairs - bad_pairs}/{pairs} pairs")


# -- 10 ------------------------------------------------------------------------------------


def tuples(count, seed=10):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, k = rng.randint(3, 6), rng.randint(2, 5)
        mode = rng.choice("fg")
        s = k + 2 if mode == "g" else rng.randint(3, k + 3)
        if (n, s, k, mode) not in out:
            out.append((n, s, k, mode))
    return out


def test_c10_search_matches_enumeration(report):
    bad = []
    for n, s, k, mode in tuples(50):
        cfg = SearchConfig(greedy_seeds=0)
        rec = compute_f(n, s, k, cfg) if mode == "f" else compute_g(n, k, cfg)
        ref = naive_extremal(n, naive_forbidden(k, mode, s))
        if rec.value != ref or not rec.exact:
            bad.append((n, s, k, mode, rec.value, ref))
    report(10, not bad, f"50 random tuples with n <= 6, mismatches {bad}")
