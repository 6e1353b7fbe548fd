"""3-uniform (multi-)hypergraphs, edge-set arithmetic and file I/O.

Vertices are ``0..n-1``.  Edges are sorted triples kept in a stable list, so
edge indices are meaningful identifiers.  Vertex and edge-index sets are plain
Python ints used as bit sets internally; the public functions accept any
iterable of ints and hand back ``frozenset`` objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 128

Edge = tuple[int, int, int]


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs or hypergraph files."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def _canonical_edge(raw: Sequence[int], n: int) -> Edge:
    if len(raw) != 3:
        raise HypergraphError(f"edge {tuple(raw)!r} does not have 3 vertices")
    a, b, c = sorted(int(v) for v in raw)
    if a == b or b == c:
        raise HypergraphError(f"edge {tuple(raw)!r} repeats a vertex")
    if a < 0 or c >= n:
        raise HypergraphError(f"edge {tuple(raw)!r} has a vertex outside [0, {n})")
    return (a, b, c)


@dataclass(frozen=True)
class Hypergraph:
    """An immutable 3-uniform hypergraph on ``n`` vertices.

    Repeated edges are only accepted with ``multi_allowed=True``; each copy
    gets its own index.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    multi_allowed: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise HypergraphError(f"vertex count must be a non-negative int, got {self.n!r}")
        if self.n > MAX_VERTICES:
            raise HypergraphError(
                f"n={self.n} exceeds the supported maximum of {MAX_VERTICES} vertices"
            )
        edges = tuple(_canonical_edge(e, self.n) for e in self.edges)
        if not self.multi_allowed and len(set(edges)) != len(edges):
            dup = next(e for e in edges if edges.count(e) > 1)
            raise HypergraphError(f"duplicate edge {dup} in a simple hypergraph")
        object.__setattr__(self, "edges", edges)

    @property
    def v(self) -> int:
        return self.n

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple((1 << a) | (1 << b) | (1 << c) for a, b, c in self.edges)

    @cached_property
    def index(self):
        # Imported lazily: the search engine depends on this module.
        from ._engine import EdgeIndex

        return EdgeIndex(self.n, self.edges)

    def span_mask(self, edge_mask: int) -> int:
        masks = self.edge_masks
        span = 0
        for i in iter_bits(edge_mask):
            span |= masks[i]
        return span

    def canonical(self) -> "Hypergraph":
        return Hypergraph(self.n, tuple(sorted(self.edges)), self.multi_allowed)

    def with_edges(self, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(tuple(e) for e in edges), self.multi_allowed)

    def sub_edges(self, indices: Iterable[int]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(self.edges[i] for i in sorted(indices)), self.multi_allowed)

    def __len__(self) -> int:
        return len(self.edges)


def _check_indices(h: Hypergraph, es: Iterable[int]) -> list[int]:
    idx = list(es)
    for i in idx:
        if not isinstance(i, int) or not 0 <= i < h.e:
            raise IndexError(f"edge index {i!r} out of range for {h.e} edges")
    return idx


def span(h: Hypergraph, es: Iterable[int]) -> frozenset[int]:
    """Vertices covered by the edges with the given indices."""
    return from_mask(h.span_mask(to_mask(_check_indices(h, es))))


def edges_meeting(h: Hypergraph, vs: Iterable[int]) -> list[int]:
    vmask = to_mask(vs)
    return [i for i, m in enumerate(h.edge_masks) if m & vmask]


def delete_vertices(
    h: Hypergraph, vs: Iterable[int], return_map: bool = False
) -> Hypergraph | tuple[Hypergraph, tuple[int, ...]]:
    """Return ``h`` minus the vertices ``vs`` and every edge touching them.

    Survivors are relabelled densely in increasing order; with
    ``return_map=True`` the tuple ``kept`` is returned too, where ``kept[i]``
    is the old label of new vertex ``i``.
    """
    removed = set(vs)
    for v in removed:
        if not 0 <= v < h.n:
            raise HypergraphError(f"vertex {v} outside [0, {h.n})")
    kept = tuple(v for v in range(h.n) if v not in removed)
    relabel = {old: new for new, old in enumerate(kept)}
    edges = tuple(
        tuple(relabel[v] for v in e) for e in h.edges if not removed.intersection(e)
    )
    out = Hypergraph(len(kept), edges, h.multi_allowed)
    return (out, kept) if return_map else out


# -- text / JSON formats -----------------------------------------------------


def read_hypergraph(text: str) -> Hypergraph:
    """Parse the ``"n m [multi]"`` header + ``m`` triple lines format.

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise HypergraphError("empty hypergraph file")
    lineno, header = lines[0]
    tokens = header.split()
    multi = False
    if len(tokens) == 3 and tokens[2] == "multi":
        multi = True
        tokens = tokens[:2]
    if len(tokens) != 2:
        raise HypergraphError(f"line {lineno}: expected 'n m [multi]', got {header!r}")
    try:
        n, m = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise HypergraphError(f"line {lineno}: non-integer header {header!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise HypergraphError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise HypergraphError(f"line {lineno}: expected 3 vertex ids, got {line!r}")
        try:
            edges.append(tuple(int(p) for p in parts))
        except ValueError:
            raise HypergraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
    try:
        return Hypergraph(n, tuple(edges), multi)
    except HypergraphError as exc:
        raise HypergraphError(f"invalid hypergraph: {exc}") from None


def write_hypergraph(h: Hypergraph, canonical: bool = True) -> str:
    g = h.canonical() if canonical else h
    header = f"{g.n} {g.e}" + (" multi" if g.multi_allowed else "")
    return "\n".join([header, *(f"{a} {b} {c}" for a, b, c in g.edges)]) + "\n"


def to_json_dict(h: Hypergraph, canonical: bool = True) -> dict:
    g = h.canonical() if canonical else h
    return {"n": g.n, "edges": [list(e) for e in g.edges], "multi": g.multi_allowed}


def from_json_dict(data: dict) -> Hypergraph:
    try:
        return Hypergraph(int(data["n"]), tuple(tuple(e) for e in data["edges"]), bool(data.get("multi", False)))
    except (KeyError, TypeError) as exc:
        raise HypergraphError(f"malformed hypergraph JSON: {exc}") from None


def dumps(h: Hypergraph) -> str:
    return json.dumps(to_json_dict(h))


def loads(text: str) -> Hypergraph:
    return from_json_dict(json.loads(text))


def load(path) -> Hypergraph:
    """Read a hypergraph file; ``.json`` files use the JSON mirror."""
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        try:
            return loads(text)
        except json.JSONDecodeError as exc:
            raise HypergraphError(f"{path}: bad JSON: {exc}") from None
    return read_hypergraph(text)


def save(h: Hypergraph, path) -> None:
    text = dumps(h) + "\n" if str(path).endswith(".json") else write_hypergraph(h)
    with open(path, "w") as fh:
        fh.write(text)


# -- small named hypergraphs ---------------------------------------------------

FANO_LINES: tuple[Edge, ...] = (
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5),
)


def fano_plane() -> Hypergraph:
    return Hypergraph(7, FANO_LINES)


def complete(n: int) -> Hypergraph:
    from itertools import combinations

    return Hypergraph(n, tuple(combinations(range(n), 3)))


__all__ = [
    "MAX_VERTICES", "Edge", "Hypergraph", "HypergraphError", "complete", "delete_vertices",
    "dumps", "edges_meeting", "fano_plane", "from_json_dict", "from_mask", "iter_bits",
    "load", "loads", "read_hypergraph", "save", "span", "to_json_dict", "to_mask",
    "write_hypergraph",
]
