import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from configlab import hypercore
from configlab.hypercore import (
    Hypergraph,
    HypergraphError,
    delete_vertices,
    fano_plane,
    read_hypergraph,
    span,
    write_hypergraph,
)


def test_span_single_edge():
    h = Hypergraph(4, ((1, 2, 3),))
    assert span(h, [0]) == {1, 2, 3}


def test_span_shared_pair_and_disjoint():
    assert span(Hypergraph(4, ((0, 1, 2), (0, 1, 3))), [0, 1]) == {0, 1, 2, 3}
    assert len(span(Hypergraph(6, ((0, 1, 2), (3, 4, 5))), [0, 1])) == 6


def test_span_rejects_bad_index():
    with pytest.raises(IndexError):
        span(Hypergraph(3, ((0, 1, 2),)), [1])


def test_edges_are_canonicalised():
    h = Hypergraph(5, ((4, 0, 2),))
    assert h.edges == ((0, 2, 4),)


@pytest.mark.parametrize("edge", [(0, 0, 1), (0, 1, 5), (-1, 1, 2), (0, 1)])
def test_bad_edges_rejected(edge):
    with pytest.raises(HypergraphError):
        Hypergraph(5, (edge,))


def test_duplicates_need_multi():
    with pytest.raises(HypergraphError):
        Hypergraph(3, ((0, 1, 2), (2, 1, 0)))
    h = Hypergraph(3, ((0, 1, 2), (0, 1, 2)), multi_allowed=True)
    assert h.e == 2


def test_vertex_limit():
    Hypergraph(hypercore.MAX_VERTICES, ())
    with pytest.raises(HypergraphError):
        Hypergraph(hypercore.MAX_VERTICES + 1, ())


def test_delete_vertices_keeps_only_avoiding_edges():
    h = Hypergraph(6, ((0, 1, 3), (0, 4, 5), (2, 3, 5)))
    out, kept = delete_vertices(h, {0, 1, 3}, return_map=True)
    assert kept == (2, 4, 5)
    assert out.n == 3
    # {2,3,5} and {0,4,5} both meet the deleted set
    assert out.e == 0


def test_delete_vertices_relabels_survivor():
    h = Hypergraph(7, ((0, 1, 3), (2, 5, 6), (1, 2, 3)))
    out, kept = delete_vertices(h, {0, 1, 3}, return_map=True)
    assert kept == (2, 4, 5, 6)
    assert out.edges == ((0, 2, 3),)
    assert tuple(kept[v] for v in out.edges[0]) == (2, 5, 6)


def test_delete_nothing_is_identity():
    h = fano_plane()
    assert delete_vertices(h, set()) == h


def test_delete_fano_line_kills_everything():
    # every two Fano lines meet, so no line survives removing one line's points
    h = fano_plane()
    for line in h.edges:
        assert delete_vertices(h, set(line)).e == 0


def test_read_minimal():
    h = read_hypergraph("3 1\n0 1 2\n")
    assert (h.n, h.edges) == (3, ((0, 1, 2),))


@pytest.mark.parametrize(
    "text",
    [
        "3 2\n0 1 2\n0 1 2\n",      # duplicate without multi
        "3 1\n0 1 3\n",             # out of range
        "3 1\n0 1\n",               # short line
        "3 1\n0 1 x\n",             # not a number
        "3 2\n0 1 2\n",             # missing line
        "",                         # no header
    ],
)
def test_read_errors(text):
    with pytest.raises(HypergraphError):
        read_hypergraph(text)


def test_read_multi_and_comments():
    h = read_hypergraph("# twin\n3 2 multi\n0 1 2\n2 1 0  # again\n")
    assert h.multi_allowed and h.e == 2


def test_fano_round_trip():
    h = fano_plane()
    assert read_hypergraph(write_hypergraph(h)) == h
    assert hypercore.loads(hypercore.dumps(h)) == h


def test_save_load(tmp_path):
    h = Hypergraph(5, ((0, 1, 2), (2, 3, 4)))
    for name in ("h.txt", "h.json"):
        hypercore.save(h, tmp_path / name)
        assert hypercore.load(tmp_path / name) == h
    assert json.loads((tmp_path / "h.json").read_text())["edges"] == [[0, 1, 2], [2, 3, 4]]


def test_bitset_helpers():
    m = hypercore.to_mask([0, 3, 5])
    assert m == 0b101001
    assert list(hypercore.iter_bits(m)) == [0, 3, 5]
    assert hypercore.from_mask(m) == {0, 3, 5}


edges_st = st.lists(
    st.lists(st.integers(0, 7), min_size=3, max_size=3, unique=True), max_size=12
)


@settings(max_examples=150, deadline=None)
@given(edges_st, st.sets(st.integers(0, 7)))
def test_delete_vertices_matches_definition(raw, vs):
    h = Hypergraph(8, tuple(raw), multi_allowed=True)
    out, kept = delete_vertices(h, vs, return_map=True)
    expect = sorted(e for e in h.edges if not set(e) & vs)
    got = sorted(tuple(kept[v] for v in e) for e in out.edges)
    assert got == expect
    assert out.n == 8 - len(vs)
    assert list(kept) == sorted(set(range(8)) - vs)


@settings(max_examples=100, deadline=None)
@given(edges_st)
def test_round_trip_property(raw):
    h = Hypergraph(8, tuple(raw), multi_allowed=True)
    back = read_hypergraph(write_hypergraph(h, canonical=False))
    assert back.edges == h.edges
    assert span(h, range(h.e)) == {v for e in h.edges for v in e}
