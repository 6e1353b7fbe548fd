"""Exact search for ``k`` edges spanning at most ``s`` vertices.

The enumeration walks vertex-connected edge sets with the ESU scheme (each
connected set is generated once, from its least index) and closes a component
to restart with a vertex-disjoint one when the vertex budget still allows a
whole new edge.  Components are ordered by their least index, so every edge
set is visited at most once.

Pruning:

* the span only grows, so a node whose span exceeds ``s`` is dead;
* with fewer than 3 spare vertices every later edge must meet the current
  span, i.e. it already sits in the extension set, and the spare-vertex
  budget caps how many of those can be taken;
* a restart with ``r`` spare vertices and ``m`` missing edges needs an
  ``(r, m)``-configuration somewhere in the hypergraph; that fact is memoised
  per index.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def _popcount(x: int) -> int:
    return x.bit_count()


class EdgeIndex:
    """Incidence bit sets of a hypergraph, growable and shrinkable at the end.

    ``vmask[i]`` is the vertex set of edge ``i``; ``nbr[i]`` the set of other
    edges sharing a vertex with it; ``inc[v]`` the edges through ``v``.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        self.n = n
        self.vmask: list[int] = []
        self.nbr: list[int] = []
        self.inc: list[int] = [0] * n
        self._memo: dict[tuple[int, int], bool] = {}
        for e in edges:
            self.push(e)

    def __len__(self) -> int:
        return len(self.vmask)

    @property
    def full(self) -> int:
        return (1 << len(self.vmask)) - 1

    def push(self, edge: Sequence[int]) -> int:
        i = len(self.vmask)
        bit = 1 << i
        vm = 0
        adj = 0
        for v in edge:
            vm |= 1 << v
            adj |= self.inc[v]
        self.vmask.append(vm)
        self.nbr.append(adj)
        nbr = self.nbr
        a = adj
        while a:
            low = a & -a
            nbr[low.bit_length() - 1] |= bit
            a ^= low
        for v in edge:
            self.inc[v] |= bit
        # adding an edge can only create configurations
        self._memo = {key: val for key, val in self._memo.items() if val}
        return i

    def pop(self) -> None:
        i = len(self.vmask) - 1
        bit = 1 << i
        vm = self.vmask.pop()
        adj = self.nbr.pop()
        nbr = self.nbr
        a = adj
        while a:
            low = a & -a
            nbr[low.bit_length() - 1] &= ~bit
            a ^= low
        while vm:
            low = vm & -vm
            self.inc[low.bit_length() - 1] &= ~bit
            vm ^= low
        self._memo = {key: val for key, val in self._memo.items() if not val}

    def meeting(self, vertex_mask: int) -> int:
        out = 0
        inc = self.inc
        while vertex_mask:
            low = vertex_mask & -vertex_mask
            out |= inc[low.bit_length() - 1]
            vertex_mask ^= low
        return out

    def exists(self, s: int, k: int) -> bool:
        """Memoised: does some set of ``k`` edges span at most ``s`` vertices?"""
        key = (s, k)
        hit = self._memo.get(key)
        if hit is None:
            hit = find(self, s, k) is not None
            self._memo[key] = hit
        return hit


def _spare_capacity(vm: list[int], ext: int, span: int, r: int) -> int:
    """Upper bound on edges of ``ext`` fitting in ``span`` plus ``r`` <= 2 new vertices."""
    inside = 0
    singles: dict[int, int] = {}
    doubles: dict[int, int] = {}
    outside_span = ~span
    while ext:
        low = ext & -ext
        ext ^= low
        out = vm[low.bit_length() - 1] & outside_span
        if not out:
            inside += 1
            continue
        c = _popcount(out)
        if c > r:
            continue
        if c == 1:
            singles[out] = singles.get(out, 0) + 1
        else:
            doubles[out] = doubles.get(out, 0) + 1
    if r == 0 or not (singles or doubles):
        return inside
    if r == 1:
        return inside + max(singles.values())
    top = sorted(singles.values(), reverse=True)[:2]
    best = sum(top)
    for pair, cnt in doubles.items():
        x = pair & -pair
        y = pair ^ x
        best = max(best, cnt + singles.get(x, 0) + singles.get(y, 0))
    return inside + best


class _Search:
    __slots__ = ("idx", "s", "k", "allowed", "vm", "nbr")

    def __init__(self, idx: EdgeIndex, s: int, k: int, allowed: int):
        self.idx = idx
        self.s = s
        self.k = k
        self.allowed = allowed
        self.vm = idx.vmask
        self.nbr = idx.nbr

    def grow(self, sub: int, excl: int, ext: int, span: int, c: int, root: int, blocked: int):
        m = self.k - c
        if m == 0:
            return sub
        r = self.s - _popcount(span)
        vm = self.vm
        if ext and (r >= 3 or _spare_capacity(vm, ext, span, r) >= m):
            s = self.s
            nbr = self.nbr
            fresh_ok = self.allowed & ~blocked & ~((1 << (root + 1)) - 1)
            rest = ext
            while rest:
                low = rest & -rest
                rest ^= low
                w = low.bit_length() - 1
                nspan = span | vm[w]
                if _popcount(nspan) > s:
                    continue
                nw = nbr[w]
                found = self.grow(
                    sub | low, excl | nw | low, rest | (nw & ~excl & fresh_ok),
                    nspan, c + 1, root, blocked,
                )
                if found is not None:
                    return found
        if r >= 3 and (not sub or self.idx.exists(r, m)):
            blocked2 = blocked | self.idx.meeting(span)
            cand = self.allowed & ~blocked2 & ~sub & ~((1 << (root + 1)) - 1)
            while cand:
                low = cand & -cand
                cand ^= low
                w = low.bit_length() - 1
                higher = ~((1 << (w + 1)) - 1)
                found = self.grow(
                    sub | low, self.nbr[w] | low, self.nbr[w] & self.allowed & ~blocked2 & higher,
                    span | vm[w], c + 1, w, blocked2,
                )
                if found is not None:
                    return found
        return None


def find(
    idx: EdgeIndex, s: int, k: int, required: Sequence[int] = (), allowed: int | None = None
) -> int | None:
    """Return a bit set of ``k`` edge indices spanning <= ``s`` vertices, or None.

    The result contains every index in ``required``; the remaining indices are
    drawn from ``allowed`` (default: all edges).  The search is exhaustive, so
    ``None`` is a proof of absence.
    """
    if k <= 0:
        return 0 if not required else None
    pool = idx.full if allowed is None else allowed & idx.full
    req = 0
    for i in required:
        req |= 1 << i
    pool &= ~req
    c = _popcount(req)
    if c > k or c + _popcount(pool) < k:
        return None
    search = _Search(idx, s, k, pool)
    if req:
        span = 0
        excl = req
        for i in required:
            span |= idx.vmask[i]
            excl |= idx.nbr[i]
        if _popcount(span) > s:
            return None
        return search.grow(req, excl, excl & pool, span, c, -1, 0)
    if s < 3:
        return None
    return search.grow(0, 0, 0, 0, 0, -1, 0)


def find_least(idx: EdgeIndex, s: int, k: int, required: Sequence[int] = (), allowed: int | None = None):
    """Like :func:`find` but returns the lexicographically least index tuple.

    Positions are fixed greedily: the next index is the smallest ``j`` for
    which a witness with all further indices above ``j`` still exists.
    """
    pool = idx.full if allowed is None else allowed & idx.full
    req = list(required)
    for i in req:
        pool &= ~(1 << i)
    if find(idx, s, k, req, pool) is None:
        return None
    chosen: list[int] = []
    lo = 0
    while len(req) + len(chosen) < k:
        for j in range(lo, len(idx)):
            if not pool >> j & 1:
                continue
            higher = pool & ~((1 << (j + 1)) - 1)
            if find(idx, s, k, req + chosen + [j], higher) is not None:
                chosen.append(j)
                lo = j + 1
                break
        else:  # pragma: no cover - existence was established above
            raise AssertionError("lexicographic refinement lost the witness")
    return tuple(sorted(req + chosen))
