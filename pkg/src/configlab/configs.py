"""(s,k)-configuration detection, f/g freeness predicates and k-maximal growth."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._engine import find, find_least
from .hypercore import Hypergraph, iter_bits, to_mask


class ConfigurationError(ValueError):
    """A set of edges is not the configuration it was claimed to be."""


@dataclass(frozen=True)
class Configuration:
    """A set of edge indices together with its edge count and span size."""

    edges: tuple[int, ...]
    ell: int
    span_size: int

    @classmethod
    def of(cls, h: Hypergraph, indices: Iterable[int]) -> "Configuration":
        es = tuple(sorted(set(indices)))
        if not es:
            raise ConfigurationError("a configuration needs at least one edge")
        for i in es:
            if not 0 <= i < h.e:
                raise IndexError(f"edge index {i} out of range for {h.e} edges")
        return cls(es, len(es), h.span_mask(to_mask(es)).bit_count())

    def is_config(self, s: int, k: int) -> bool:
        return self.ell == k and self.span_size <= s

    def vertices(self, h: Hypergraph) -> frozenset[int]:
        return frozenset(iter_bits(h.span_mask(to_mask(self.edges))))

    def to_json(self) -> dict:
        return {"edges": list(self.edges), "ell": self.ell, "span": self.span_size}


def forbidden(k: int, mode: str = "g", s: int | None = None, multi: bool = False) -> list[tuple[int, int]]:
    """The ``(s, k)`` pairs a hypergraph must avoid under ``mode``.

    ``"f"`` forbids one pair (``s`` defaults to ``k+2``).  ``"g"`` forbids
    ``(k+2, k)`` and ``(l+1, l)`` for ``2 <= l <= k-1``, plus ``(3, 2)`` for
    multi-hypergraphs.
    """
    if mode == "f":
        return [(k + 2 if s is None else s, k)]
    if mode != "g":
        raise ValueError(f"unknown mode {mode!r}")
    pairs = [(k + 2, k)] + [(ell + 1, ell) for ell in range(2, k)]
    if multi and (3, 2) not in pairs:
        pairs.append((3, 2))
    return pairs


def find_configuration(h: Hypergraph, s: int, k: int) -> Configuration | None:
    """Lexicographically least set of ``k`` edges spanning at most ``s`` vertices."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if s < 3:
        raise ValueError("s must be at least 3")
    if k > h.e:
        return None
    found = find_least(h.index, s, k)
    return None if found is None else Configuration.of(h, found)


def has_configuration(h: Hypergraph, s: int, k: int) -> bool:
    if k > h.e:
        return False
    return find(h.index, s, k) is not None


def is_f_free(h: Hypergraph, k: int) -> bool:
    """No ``k`` edges span at most ``k+2`` vertices."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return not has_configuration(h, k + 2, k)


def is_g_free(h: Hypergraph, k: int) -> bool:
    if k < 2:
        raise ValueError("k must be at least 2")
    return not any(has_configuration(h, s, kk) for s, kk in forbidden(k, "g", multi=h.multi_allowed))


@dataclass(frozen=True)
class FreenessReport:
    k: int
    is_f_free: bool
    is_g_free: bool
    first_violation: Configuration | None = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "is_f_free": self.is_f_free,
            "is_g_free": self.is_g_free,
            "first_violation": None if self.first_violation is None else self.first_violation.to_json(),
        }


def freeness_report(h: Hypergraph, k: int) -> FreenessReport:
    """Both flags at once; the witness is the least violation of the first failing pair."""
    witness = None
    f_free = g_free = True
    for s, kk in forbidden(k, "g", multi=h.multi_allowed):
        if kk > h.e or not has_configuration(h, s, kk):
            continue
        g_free = False
        if (s, kk) == (k + 2, k):
            f_free = False
        if witness is None:
            witness = find_configuration(h, s, kk)
    return FreenessReport(k, f_free, g_free, witness)


# -- k-maximal configurations ------------------------------------------------------


def _check_seed(h: Hypergraph, seed: Configuration | Iterable[int], k: int) -> Configuration:
    conf = seed if isinstance(seed, Configuration) else Configuration.of(h, seed)
    conf = Configuration.of(h, conf.edges)  # recompute span against h
    if not 2 <= conf.ell <= k - 1:
        raise ConfigurationError(f"need 2 <= l <= k-1 = {k - 1}, got l = {conf.ell}")
    if conf.span_size > conf.ell + 1:
        raise ConfigurationError(
            f"edges {conf.edges} span {conf.span_size} > l+1 = {conf.ell + 1} vertices"
        )
    return conf


def find_extension(h: Hypergraph, conf: Configuration, k: int) -> Configuration | None:
    """Least strict superset of ``conf`` that is an (l'+1, l')-configuration with l' <= k-1.

    Smaller supersets are preferred; ties go to the lexicographically least
    set of added indices.
    """
    for ell2 in range(conf.ell + 1, k):
        found = find_least(h.index, ell2 + 1, ell2, required=conf.edges)
        if found is not None:
            return Configuration.of(h, found)
    return None


def is_k_maximal(h: Hypergraph, conf: Configuration | Iterable[int], k: int) -> bool:
    conf = _check_seed(h, conf, k)
    return all(
        find(h.index, ell2 + 1, ell2, required=conf.edges) is None for ell2 in range(conf.ell + 1, k)
    )


def _greedy_extension(h: Hypergraph, conf: Configuration, k: int) -> tuple[int, ...] | None:
    """Cheap super-configuration moves; None when none applies.

    Tried in order: an edge inside V(S), an edge with two vertices in V(S), two
    edges with one vertex in V(S) and the same outside pair, a cycle of length
    <= k-1-l among the outside pairs.
    """
    room = k - 1 - conf.ell
    if room <= 0:
        return None
    inside = to_mask(conf.edges)
    vs = h.span_mask(inside)
    by_overlap: dict[int, list[int]] = {1: [], 2: [], 3: []}
    for i, m in enumerate(h.edge_masks):
        if inside >> i & 1:
            continue
        c = (m & vs).bit_count()
        if c:
            by_overlap[c].append(i)
    if by_overlap[3]:
        return (by_overlap[3][0],)
    if by_overlap[2]:
        return (by_overlap[2][0],)
    if room < 2:
        return None
    outside: dict[int, list[int]] = {}
    for i in by_overlap[1]:
        outside.setdefault(h.edge_masks[i] & ~vs, []).append(i)
    twins = [tuple(idx[:2]) for idx in outside.values() if len(idx) > 1]
    if twins:
        return min(twins)
    cycle = _short_cycle(outside, room)
    return cycle


def _short_cycle(outside: dict[int, list[int]], max_len: int) -> tuple[int, ...] | None:
    """Edges of a shortest cycle (length <= max_len) in the outside-pair graph."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for pair, idx in outside.items():
        x, y = iter_bits(pair)
        adj.setdefault(x, []).append((y, idx[0]))
        adj.setdefault(y, []).append((x, idx[0]))
    best = None
    for src in sorted(adj):
        # BFS tree from src; a non-tree edge closes a cycle through the tree
        parent = {src: (None, None)}
        depth = {src: 0}
        queue = [src]
        for u in queue:
            for w, ei in adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = (u, ei)
                    queue.append(w)
                elif parent[u][1] != ei and depth[w] >= depth[u]:
                    length = depth[u] + depth[w] + 1
                    if length > max_len:
                        continue
                    path_u, path_w = _path(parent, u), _path(parent, w)
                    shared = set(path_u) & set(path_w)
                    if shared:
                        continue  # walk rather than a simple cycle
                    cyc = tuple(sorted(path_u + path_w + [ei]))
                    if best is None or (len(cyc), cyc) < (len(best), best):
                        best = cyc
    return best


def _path(parent, v) -> list[int]:
    out = []
    while parent[v][0] is not None:
        u, ei = parent[v]
        out.append(ei)
        v = u
    return out


def grow_k_maximal(h: Hypergraph, seed: Configuration | Iterable[int], k: int) -> Configuration:
    """Grow an (l+1, l)-configuration until no (l'+1, l') superset with l' <= k-1 remains.

    Greedy moves do most of the work; the exact superset search both finds
    what they miss and certifies the result.
    """
    conf = _check_seed(h, seed, k)
    while conf.ell < k - 1:
        extra = _greedy_extension(h, conf, k)
        if extra is not None:
            nxt = Configuration.of(h, conf.edges + extra)
            if nxt.span_size > nxt.ell + 1:  # pragma: no cover - moves preserve the invariant
                raise AssertionError(f"greedy move produced a non-configuration {nxt}")
        else:
            nxt = find_extension(h, conf, k)
            if nxt is None:
                break
        conf = nxt
    return conf


__all__ = [
    "Configuration", "ConfigurationError", "FreenessReport", "find_configuration",
    "find_extension", "forbidden", "freeness_report", "grow_k_maximal", "has_configuration",
    "is_f_free", "is_g_free", "is_k_maximal",
]
