import random
from itertools import combinations, permutations

import pytest
from oracles import naive_extremal, naive_forbidden, naive_is_free

from configlab import Hypergraph, fano_plane, is_f_free, is_g_free
from configlab.extremal import (
    ResultsCache,
    SearchConfig,
    SearchRecord,
    canonical_form,
    compute_f,
    compute_g,
    gen_planted_free,
    gen_random_free,
    packing_number,
    ratio_table,
    steiner_triple_system,
)
from configlab.extremal.canon import invariant


def test_three_vertices():
    assert compute_f(3, 4, 2).value == 1


def test_seven_is_fano():
    rec = compute_f(7, 4, 2)
    assert rec.value == 7 and rec.exact
    assert canonical_form(7, rec.witness.edges) == canonical_form(7, fano_plane().edges)


@pytest.mark.parametrize("n", range(3, 8))
def test_g_equals_f_at_k2(n):
    assert compute_g(n, 2).value == compute_f(n, 4, 2).value


def test_witness_is_free_and_full():
    rec = compute_g(7, 4)
    assert rec.witness.e == rec.value and is_g_free(rec.witness, 4)


@pytest.mark.parametrize("symmetry,bounds", [(True, True), (False, True), (True, False), (False, False)])
def test_pruning_switches_agree(symmetry, bounds):
    cfg = SearchConfig(symmetry=symmetry, bounds=bounds, greedy_seeds=0)
    for n, s, k in [(6, 5, 3), (6, 4, 3), (6, 6, 4)]:
        assert compute_f(n, s, k, cfg).value == naive_extremal(n, naive_forbidden(k, "f", s))


def test_budget_exhaustion_is_a_lower_bound():
    rec = compute_f(9, 5, 3, SearchConfig(max_nodes=50))
    assert not rec.exact
    assert is_f_free(rec.witness, 3) or rec.witness.e == 0
    assert rec.value <= compute_f(9, 5, 3).value


def test_initial_witness_is_checked():
    with pytest.raises(ValueError):
        compute_f(7, 4, 2, SearchConfig(initial=Hypergraph(7, ((0, 1, 2), (0, 1, 3)))))
    rec = compute_f(7, 4, 2, SearchConfig(initial=fano_plane(), greedy_seeds=0))
    assert rec.value == 7 and rec.exact


def test_two_workers_agree():
    cfg = SearchConfig(threads=2)
    for n, s, k in [(7, 4, 2), (7, 5, 3), (6, 6, 4)]:
        assert compute_f(n, s, k, cfg).value == compute_f(n, s, k).value


@pytest.mark.parametrize("kw", [dict(max_nodes=0), dict(time_budget=-1.0), dict(threads=0)])
def test_bad_config(kw):
    with pytest.raises(ValueError):
        SearchConfig(**kw)


@pytest.mark.parametrize("n,s,k", [(2, 4, 2), (11, 4, 2), (5, 2, 2), (5, 4, 1)])
def test_bad_parameters(n, s, k):
    with pytest.raises(ValueError):
        compute_f(n, s, k)


def test_packing_numbers():
    assert [packing_number(n) for n in range(3, 14)] == [1, 1, 2, 4, 7, 8, 12, 13, 17, 20, 26]


def test_record_json_round_trip():
    rec = compute_f(6, 4, 2)
    back = SearchRecord.from_json(rec.to_json())
    assert back.value == rec.value and back.witness == rec.witness and back.key == "f:6:4:2"


def test_cache(tmp_path):
    path = tmp_path / "cache.json"
    cache = ResultsCache(path)
    rec = compute_f(6, 4, 2)
    cache.put(rec)
    cache.save()
    again = ResultsCache(path)
    assert again.get("f", 6, 4, 2).value == rec.value
    assert again.get("g", 6, 4, 2) is None
    loose = compute_f(9, 5, 3, SearchConfig(max_nodes=20))
    again.put(loose)
    assert again.get("f", 9, 5, 3) is None
    assert again.get("f", 9, 5, 3, exact_only=False).value == loose.value


def test_cache_env(tmp_path, monkeypatch):
    from configlab.extremal import default_cache_path

    monkeypatch.setenv("CONFIGLAB_CACHE", str(tmp_path / "x.json"))
    assert default_cache_path() == tmp_path / "x.json"


def test_ratio_table_annotation():
    table = ratio_table(2, range(3, 8))
    csv = table.to_csv()
    assert "1/6" in csv and csv.splitlines()[2] == "n,value,ratio,exact"
    row = table.rows[-1]
    assert (row.n, row.value) == (7, 7) and row.ratio == pytest.approx(7 / 49)


# -- canonical forms ---------------------------------------------------------------------------


def brute_canon(n, edges):
    return min(
        tuple(sorted(tuple(sorted(p[v] for v in e)) for e in edges)) for p in permutations(range(n))
    )


def _random_edges(rng, n):
    triples = list(combinations(range(n), 3))
    return rng.sample(triples, rng.randint(0, min(8, len(triples))))


@pytest.mark.parametrize("seed", range(25))
def test_canonical_form_is_relabelling_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    edges = _random_edges(rng, n)
    p = list(range(n))
    rng.shuffle(p)
    moved = [tuple(sorted(p[v] for v in e)) for e in edges]
    form = canonical_form(n, edges)
    assert canonical_form(n, moved) == form
    assert invariant(n, moved) == invariant(n, edges)
    # the form is itself a relabelling of the input
    assert brute_canon(n, form) == brute_canon(n, edges)


def test_canonical_form_is_complete():
    # equal forms exactly when the permutation minima agree
    rng = random.Random(99)
    for _ in range(150):
        n = rng.randint(4, 6)
        a, b = _random_edges(rng, n), _random_edges(rng, n)
        if rng.random() < 0.5:
            p = rng.sample(range(n), n)
            b = [tuple(sorted(p[v] for v in e)) for e in a]
        same = brute_canon(n, a) == brute_canon(n, b)
        assert (canonical_form(n, a) == canonical_form(n, b)) == same


def test_canonical_form_separates_non_isomorphic():
    a = [(0, 1, 2), (0, 1, 3)]
    b = [(0, 1, 2), (0, 3, 4)]
    assert canonical_form(5, a) != canonical_form(5, b)


# -- generators -------------------------------------------------------------------------------


def test_random_free_is_deterministic_and_maximal():
    a = gen_random_free(6, 2, "f", seed=11)
    assert a == gen_random_free(6, 2, "f", seed=11)
    assert is_f_free(a, 2)
    for t in combinations(range(6), 3):
        if t not in a.edges:
            assert not is_f_free(a.with_edges(a.edges + (t,)), 2)


def test_random_g_free():
    h = gen_random_free(20, 3, "g", seed=1)
    assert is_g_free(h, 3) and h.e > 0


@pytest.mark.parametrize("multi", [False, True])
def test_planted_free(multi):
    for seed in range(5):
        h = gen_planted_free(14, 4, seed=seed, multi=multi)
        assert is_f_free(h, 4)
        if h.e <= 14:
            assert naive_is_free(h.edges, naive_forbidden(4, "f"))


@pytest.mark.parametrize("n", [7, 9, 15, 21])
def test_steiner_triple_systems(n):
    h = steiner_triple_system(n)
    pairs = [p for e in h.edges for p in combinations(e, 2)]
    assert len(pairs) == len(set(pairs)) == n * (n - 1) // 2


def test_steiner_rejects_other_orders():
    with pytest.raises(ValueError):
        steiner_triple_system(13)
