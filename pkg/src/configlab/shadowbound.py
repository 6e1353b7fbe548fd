"""Pair-intersection graph, 2-shadows and the edge bound for g-free hypergraphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from .configs import freeness_report, is_f_free
from .hypercore import Hypergraph


class PreconditionError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class IntersectionGraph:
    """Graph on edge indices; two edges are adjacent when they share >= 2 vertices."""

    adjacency: tuple[frozenset[int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2


def build_intersection_graph(h: Hypergraph) -> IntersectionGraph:
    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(h.edges):
        for p in combinations(e, 2):
            by_pair.setdefault(p, []).append(i)
    adj: list[set[int]] = [set() for _ in range(h.e)]
    for owners in by_pair.values():
        for a, b in combinations(owners, 2):
            adj[a].add(b)
            adj[b].add(a)
    seen = [False] * h.e
    comps = []
    for start in range(h.e):
        if seen[start]:
            continue
        seen[start] = True
        comp, stack = [start], [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return IntersectionGraph(tuple(frozenset(a) for a in adj), tuple(comps))


def two_shadow(h: Hypergraph, ys: Iterable[int]) -> frozenset[tuple[int, int]]:
    """All vertex pairs lying inside some edge of ``ys``."""
    out = set()
    for i in ys:
        out.update(combinations(h.edges[i], 2))
    return frozenset(out)


def is_connected_in(ig: IntersectionGraph, edges: Iterable[int]) -> bool:
    nodes = set(edges)
    if not nodes:
        return False
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in ig.adjacency[u] & nodes:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


def sample_connected_subsets(ig: IntersectionGraph, component: Iterable[int], rng: random.Random, count: int):
    """Random connected edge sets inside one component, grown one neighbour at a time."""
    comp = sorted(component)
    out = []
    for _ in range(count):
        target = rng.randint(1, len(comp))
        chosen = [rng.choice(comp)]
        frontier = set(ig.adjacency[chosen[0]])
        while len(chosen) < target and frontier:
            nxt = rng.choice(sorted(frontier))
            chosen.append(nxt)
            frontier |= ig.adjacency[nxt]
            frontier -= set(chosen)
        out.append(tuple(sorted(chosen)))
    return out


@dataclass(frozen=True)
class ComponentClaim:
    edges: tuple[int, ...]
    size: int
    span: int
    shadow: int

    @property
    def holds(self) -> bool:
        return self.span == self.size + 2 and self.shadow == 2 * self.size + 1


@dataclass(frozen=True)
class ShadowReport:
    k: int
    components: tuple[ComponentClaim, ...]
    total_shadow: int
    shadows_disjoint: bool
    sizes_ok: bool            # every component has at most k-1 edges
    f_free_cross_check: bool  # the same fact, re-derived by configuration search
    bound: Fraction
    holds: bool

    @property
    def all_hold(self) -> bool:
        return (
            all(c.holds for c in self.components)
            and self.shadows_disjoint and self.sizes_ok and self.f_free_cross_check and self.holds
        )

    def to_json(self) -> dict:
        return {
            "components": [{"size": c.size, "span": c.span, "shadow": c.shadow} for c in self.components],
            "total_shadow": self.total_shadow,
            "shadows_disjoint": self.shadows_disjoint,
            "bound_num": self.bound.numerator,
            "bound_den": self.bound.denominator,
            "holds": self.holds,
            "all_hold": self.all_hold,
        }


def _require_g_free(h: Hypergraph, k: int) -> None:
    rep = freeness_report(h, k)
    if not rep.is_g_free:
        raise PreconditionError(f"hypergraph is not g-free for k={k}", rep.first_violation)


def edge_bound(h: Hypergraph, k: int) -> Fraction:
    """(k-1)/(2k-1) * C(v, 2)."""
    return Fraction(k - 1, 2 * k - 1) * comb(h.n, 2)


def edge_bound_check(h: Hypergraph, k: int, check: bool = True) -> tuple[Fraction, bool]:
    if check:
        _require_g_free(h, k)
    bound = edge_bound(h, k)
    return bound, (2 * k - 1) * 2 * h.e <= (k - 1) * h.n * (h.n - 1)


def quadratic_bound_holds(e: int, v: int, k: int) -> bool:
    """e <= (k-1)/(4k-2) v^2, in integers."""
    return (4 * k - 2) * e <= (k - 1) * v * v


def verify_component_claims(h: Hypergraph, k: int, check: bool = True) -> ShadowReport:
    if check:
        _require_g_free(h, k)
    ig = build_intersection_graph(h)
    claims = []
    seen_pairs: set[tuple[int, int]] = set()
    disjoint = True
    total = 0
    for comp in ig.components:
        sh = two_shadow(h, comp)
        if seen_pairs & sh:
            disjoint = False
        seen_pairs |= sh
        total += len(sh)
        span = len({v for i in comp for v in h.edges[i]})
        claims.append(ComponentClaim(comp, len(comp), span, len(sh)))
    bound, holds = edge_bound_check(h, k, check=False)
    return ShadowReport(
        k=k,
        components=tuple(claims),
        total_shadow=total,
        shadows_disjoint=disjoint and total <= comb(h.n, 2),
        sizes_ok=all(c.size <= k - 1 for c in claims),
        f_free_cross_check=is_f_free(h, k),
        bound=bound,
        holds=holds,
    )


__all__ = [
    "ComponentClaim", "IntersectionGraph", "PreconditionError", "ShadowReport",
    "build_intersection_graph", "edge_bound", "edge_bound_check", "is_connected_in",
    "quadratic_bound_holds", "sample_connected_subsets", "two_shadow", "verify_component_claims",
]
