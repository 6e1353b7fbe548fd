"""Random and algebraic sources of free hypergraphs."""

from __future__ import annotations

import random
from itertools import combinations

from .._engine import EdgeIndex, find
from ..configs import forbidden
from ..hypercore import Hypergraph


def _mode(mode: str) -> str:
    m = mode.removesuffix("-free")
    if m not in ("f", "g"):
        raise ValueError(f"mode must be 'f' or 'g', got {mode!r}")
    return m


def _accepts(idx: EdgeIndex, i: int, pairs) -> bool:
    return all(kk > len(idx) or find(idx, s, kk, required=(i,)) is None for s, kk in pairs)


def greedy_fill(n: int, pairs, order, start=()) -> list[tuple[int, int, int]]:
    """Add triples from ``order`` one by one, keeping those that create no forbidden configuration."""
    idx = EdgeIndex(n)
    edges = []
    for t in start:
        idx.push(t)
        edges.append(tuple(t))
    present = set(edges)
    for t in order:
        if t in present:
            continue
        i = idx.push(t)
        if _accepts(idx, i, pairs):
            edges.append(t)
            present.add(t)
        else:
            idx.pop()
    return edges


def gen_random_free(n: int, k: int, mode: str = "f", seed: int = 0, s: int | None = None) -> Hypergraph:
    """Random greedy free hypergraph: shuffle all triples, keep each that stays free."""
    pairs = forbidden(k, _mode(mode), s=s)
    rng = random.Random(seed)
    order = list(combinations(range(n), 3))
    rng.shuffle(order)
    return Hypergraph(n, tuple(greedy_fill(n, pairs, order)))


# Small dense pieces: (name, vertex count, edges).  Planting them before the
# greedy fill makes (l+1, l)-configurations common in the corpus.
GADGETS = (
    ("double", 4, ((0, 1, 2), (0, 1, 3))),               # 2 edges on 4 vertices
    ("k4minus", 4, ((0, 1, 2), (0, 1, 3), (0, 2, 3))),    # (4,3)
    ("fan", 5, ((0, 1, 2), (0, 1, 3), (0, 2, 4), (1, 3, 4))),  # (5,4)
    ("book", 5, ((0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 3, 4))),  # (5,4)
)
TWIN = ("twin", 3, ((0, 1, 2), (0, 1, 2)))  # (3,2); multi-hypergraphs only


def gen_planted_free(
    n: int, k: int, seed: int = 0, gadgets: int | None = None, multi: bool = False
) -> Hypergraph:
    """(k+2, k)-free hypergraph seeded with small dense gadgets, then greedily filled.

    With ``multi=True`` repeated edges are among the gadgets and the result is
    a multi-hypergraph.
    """
    rng = random.Random(seed)
    pairs = forbidden(k, "f")
    pool = GADGETS + (TWIN,) * 2 if multi else GADGETS
    count = rng.randint(1, max(1, n // 6)) if gadgets is None else gadgets
    start: list[tuple[int, int, int]] = []
    idx = EdgeIndex(n)
    for _ in range(count):
        _, size, gedges = rng.choice(pool)
        verts = rng.sample(range(n), size)
        placed = [tuple(sorted(verts[v] for v in e)) for e in gedges]
        pushed = 0
        ok = True
        for t in placed:
            if t in start and not multi:
                ok = False
                break
            i = idx.push(t)
            pushed += 1
            if not _accepts(idx, i, pairs):
                ok = False
                break
        if ok:
            start.extend(placed)
        else:
            for _ in range(pushed):
                idx.pop()
    order = list(combinations(range(n), 3))
    rng.shuffle(order)
    return Hypergraph(n, tuple(greedy_fill(n, pairs, order, start)), multi_allowed=multi)


def steiner_triple_system(n: int) -> Hypergraph:
    """A Steiner triple system on n vertices (n = 7, or n = 3 mod 6 via Bose)."""
    if n == 7:
        from ..hypercore import fano_plane

        return fano_plane()
    if n % 6 != 3:
        raise ValueError("only n = 7 and n = 3 (mod 6) are constructed")
    # Bose: points Z_{2m+1} x Z_3, idempotent commutative quasigroup x*y = (x+y)(m+1)
    q = n // 3
    half = (q + 1) // 2

    def pt(x, i):
        return x + q * i

    def op(x, y):
        return ((x + y) * half) % q

    triples = []
    for x in range(q):
        triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
    for x in range(q):
        for y in range(x + 1, q):
            for i in range(3):
                triples.append((pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)))
    return Hypergraph(n, tuple(tuple(sorted(t)) for t in triples))
