"""Canonical forms of small 3-uniform hypergraphs.

Individualisation-refinement: colour vertices by degree, refine by the
colours of edge partners until stable, then branch on each vertex of the
first non-trivial cell.  Every discrete leaf gives a relabelling; the
lexicographically least relabelled edge list is the canonical form.  Cells
made only of isolated vertices are never branched on since their order does
not change the edge list.
"""

from __future__ import annotations

from typing import Sequence

Edges = tuple[tuple[int, int, int], ...]


def _refine(col: list[int], partners: list[list[tuple[int, int]]]) -> list[int]:
    n = len(col)
    cells = len(set(col))
    while True:
        sig = [
            (col[v], tuple(sorted((min(col[a], col[b]), max(col[a], col[b])) for a, b in partners[v])))
            for v in range(n)
        ]
        order = sorted(range(n), key=sig.__getitem__)
        new = [0] * n
        for pos, v in enumerate(order):
            if pos and sig[v] == sig[order[pos - 1]]:
                new[v] = new[order[pos - 1]]
            else:
                new[v] = pos
        ncells = len(set(new))
        if ncells == cells:
            return new
        col, cells = new, ncells


def canonical_form(n: int, edges: Sequence[Sequence[int]]) -> Edges:
    """Canonical sorted edge list; equal for two hypergraphs iff they are isomorphic."""
    partners: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in edges:
        partners[a].append((b, c))
        partners[b].append((a, c))
        partners[c].append((a, b))
    col = _refine([len(p) for p in partners], partners)
    best: list[Edges | None] = [None]

    def leaf(col: list[int]) -> None:
        # ties among isolated vertices are broken arbitrarily
        order = sorted(range(n), key=lambda v: (col[v], v))
        label = [0] * n
        for pos, v in enumerate(order):
            label[v] = pos
        form = tuple(sorted(tuple(sorted((label[a], label[b], label[c]))) for a, b, c in edges))
        if best[0] is None or form < best[0]:
            best[0] = form

    def search(col: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(col[v], []).append(v)
        target = None
        for c in sorted(cells):
            members = cells[c]
            if len(members) > 1 and partners[members[0]]:
                target = (c, members)
                break
        if target is None:
            leaf(col)
            return
        c, members = target
        for v in members:
            branch = [x + 1 if x == c and u != v else x for u, x in enumerate(col)]
            search(_refine(branch, partners))

    search(col)
    return best[0]  # type: ignore[return-value]


def invariant(n: int, edges: Sequence[Sequence[int]]) -> tuple:
    """Cheap isomorphism invariant: degree sequence and pair-intersection degree sequence."""
    deg = [0] * n
    pairs: dict[tuple[int, int], int] = {}
    for a, b, c in edges:
        deg[a] += 1
        deg[b] += 1
        deg[c] += 1
        for p in ((a, b), (a, c), (b, c)):
            pairs[p] = pairs.get(p, 0) + 1
    inter = sorted(
        sum(pairs[p] - 1 for p in ((a, b), (a, c), (b, c))) for a, b, c in edges
    )
    return (tuple(sorted(deg)), tuple(inter))
