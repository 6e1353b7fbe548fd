"""Exact f and g values at desk scale by isomorph-pruned branch and bound.

The search walks isomorphism classes of free hypergraphs one added edge at
a time.  Freeness is hereditary, so every free hypergraph with m+1 edges
extends some free class with m edges, and visiting every class reachable by
single-edge additions (each class once, by canonical form) is exhaustive.
A node is cut when an admissible upper bound on its best extension cannot
beat the incumbent.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .._engine import EdgeIndex
from ..configs import forbidden, has_configuration
from ..hypercore import Hypergraph
from .canon import canonical_form
from .generate import _accepts, greedy_fill

log = logging.getLogger(__name__)

DESK_LIMIT = 10

# Limits of n^-2 f(n; k+2, k) known for small k, used to annotate tables.
REFERENCE_LIMITS = {2: Fraction(1, 6), 3: Fraction(1, 5), 4: Fraction(7, 36)}


class BudgetExhausted(Exception):
    pass


@dataclass
class SearchConfig:
    max_nodes: int | None = 5_000_000
    time_budget: float | None = None      # seconds
    symmetry: bool = True
    bounds: bool = True                   # theory-based upper bounds; off = plain enumeration
    initial: Hypergraph | None = None     # known free hypergraph, seeds the incumbent
    threads: int = 1
    max_n: int = DESK_LIMIT
    greedy_seeds: int = 8

    def __post_init__(self) -> None:
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class SearchRecord:
    n: int
    s: int
    k: int
    mode: str
    value: int
    witness: Hypergraph
    exact: bool
    nodes: int = 0
    bound_prunes: int = 0
    iso_prunes: int = 0
    wall_time: float = 0.0

    @property
    def key(self) -> str:
        return f"{self.mode}:{self.n}:{self.s}:{self.k}"

    def to_json(self) -> dict:
        from ..hypercore import to_json_dict

        return {
            "n": self.n, "s": self.s, "k": self.k, "mode": self.mode, "value": self.value,
            "exact": self.exact, "witness": to_json_dict(self.witness),
            "stats": {"nodes": self.nodes, "bound_prunes": self.bound_prunes,
                      "iso_prunes": self.iso_prunes, "wall_time": self.wall_time},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchRecord":
        from ..hypercore import from_json_dict

        st = data.get("stats", {})
        return cls(
            n=data["n"], s=data["s"], k=data["k"], mode=data["mode"], value=data["value"],
            witness=from_json_dict(data["witness"]), exact=data["exact"],
            nodes=st.get("nodes", 0), bound_prunes=st.get("bound_prunes", 0),
            iso_prunes=st.get("iso_prunes", 0), wall_time=st.get("wall_time", 0.0),
        )


def _is_free(h: Hypergraph, pairs) -> bool:
    return not any(has_configuration(h, s, k) for s, k in pairs)


class _Solver:
    def __init__(self, n, pairs, cfg: SearchConfig, global_cap, deadline, shared=None):
        self.n = n
        self.pairs = pairs
        self.cfg = cfg
        self.global_cap = global_cap
        self.deadline = deadline
        self.shared = shared
        self.linear = any(kk == 2 and s >= 4 for s, kk in pairs)
        self.idx = EdgeIndex(n)
        self.edges: list[tuple[int, int, int]] = []
        self.best = -1
        self.witness: tuple = ()
        self.seen: set = set()
        self.nodes = self.bound_prunes = self.iso_prunes = 0

    def offer(self, edges) -> None:
        if len(edges) > self.best:
            self.best = len(edges)
            self.witness = tuple(edges)
            if self.shared is not None:
                with self.shared.get_lock():
                    if self.shared.value < self.best:
                        self.shared.value = self.best

    def incumbent(self) -> int:
        if self.shared is not None:
            return max(self.best, self.shared.value)
        return self.best

    def compatible(self, cands):
        out = []
        for t in cands:
            i = self.idx.push(t)
            if _accepts(self.idx, i, self.pairs):
                out.append(t)
            self.idx.pop()
        return out

    def upper_bound(self, comp) -> int:
        m = len(self.edges)
        extra = len(comp)
        if not self.cfg.bounds:
            return m + extra
        per_vertex = [0] * self.n
        for t in comp:
            for v in t:
                per_vertex[v] += 1
        if self.linear:
            covered = [0] * self.n
            for e in self.edges:
                for v in e:
                    covered[v] += 2
            free_pairs = comb(self.n, 2) - 3 * m
            extra = min(extra, free_pairs // 3)
            per_vertex = [min(c, (self.n - 1 - covered[v]) // 2) for v, c in enumerate(per_vertex)]
        extra = min(extra, sum(per_vertex) // 3)
        ub = m + extra
        if self.global_cap is not None:
            ub = min(ub, self.global_cap)
        return ub

    def tick(self) -> None:
        self.nodes += 1
        if self.cfg.max_nodes is not None and self.nodes > self.cfg.max_nodes:
            raise BudgetExhausted
        if self.deadline is not None and self.nodes % 64 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def dfs(self, cands) -> None:
        self.tick()
        self.offer(self.edges)
        comp = self.compatible(cands)
        if self.upper_bound(comp) <= self.incumbent():
            self.bound_prunes += 1
            return
        for j, t in enumerate(comp):
            if self.cfg.symmetry:
                key = canonical_form(self.n, self.edges + [t])
                if key in self.seen:
                    self.iso_prunes += 1
                    continue
                self.seen.add(key)
                rest = comp[:j] + comp[j + 1:]
            else:
                rest = comp[j + 1:]
            self.idx.push(t)
            self.edges.append(t)
            try:
                self.dfs(rest)
            finally:
                self.edges.pop()
                self.idx.pop()
            if self.upper_bound(comp) <= self.incumbent():
                break

    def start_from(self, edges, cands) -> None:
        for t in edges:
            self.idx.push(t)
            self.edges.append(tuple(t))
        present = set(self.edges)
        self.dfs([t for t in cands if t not in present])


def _pairs_for(mode: str, n: int, s: int, k: int):
    return forbidden(k, "f", s=s) if mode == "f" else forbidden(k, "g")


def _global_cap(mode: str, n: int, s: int, k: int) -> int | None:
    if mode == "g" or (s == k + 2 and k == 2):
        return ((k - 1) * comb(n, 2)) // (2 * k - 1)
    return None


# Workers of the threaded search share the incumbent through this cell.
_SHARED = None


def _worker_init(shared) -> None:
    global _SHARED
    _SHARED = shared


def _worker(args):
    n, pairs, cfg, cap, deadline, start, best0 = args
    solver = _Solver(n, pairs, cfg, cap, deadline, shared=_SHARED)
    solver.best = -1
    exhausted = False
    try:
        solver.start_from(start, list(combinations(range(n), 3)))
    except BudgetExhausted:
        exhausted = True
    return solver.best, solver.witness, exhausted, solver.nodes, solver.bound_prunes, solver.iso_prunes


def _solve(mode: str, n: int, s: int, k: int, cfg: SearchConfig) -> SearchRecord:
    if not 3 <= n <= cfg.max_n:
        raise ValueError(f"n must be in [3, {cfg.max_n}], got {n}")
    if k < 2 or s < 3:
        raise ValueError(f"need k >= 2 and s >= 3, got s={s}, k={k}")
    t0 = time.monotonic()
    deadline = t0 + cfg.time_budget if cfg.time_budget else None
    pairs = _pairs_for(mode, n, s, k)
    cap = _global_cap(mode, n, s, k)
    triples = list(combinations(range(n), 3))
    solver = _Solver(n, pairs, cfg, cap, deadline)

    # incumbent from greedy runs and the optional known witness
    for seed in range(cfg.greedy_seeds):
        order = triples[:]
        random.Random(seed).shuffle(order)
        solver.offer(greedy_fill(n, pairs, order))
    if cfg.initial is not None:
        init = cfg.initial
        if init.n != n or not _is_free(init, pairs):
            raise ValueError("initial witness is not a free hypergraph on n vertices")
        solver.offer(list(init.edges))

    exhausted = False
    stats = [0, 0, 0]
    if cfg.threads > 1:
        exhausted, stats = _solve_parallel(solver, n, pairs, cfg, cap, deadline, triples)
    else:
        try:
            solver.dfs(triples)
        except BudgetExhausted:
            exhausted = True
    witness = Hypergraph(n, tuple(sorted(solver.witness)))
    if not _is_free(witness, pairs) or witness.e != solver.best:  # pragma: no cover
        raise AssertionError("search produced a witness that fails the independent freeness check")
    rec = SearchRecord(
        n=n, s=s, k=k, mode=mode, value=solver.best, witness=witness, exact=not exhausted,
        nodes=solver.nodes + stats[0], bound_prunes=solver.bound_prunes + stats[1],
        iso_prunes=solver.iso_prunes + stats[2], wall_time=time.monotonic() - t0,
    )
    log.info("%s(%d; %d, %d) %s %d after %d nodes", mode, n, s, k,
             "=" if rec.exact else ">=", rec.value, rec.nodes)
    return rec


def _solve_parallel(solver: _Solver, n, pairs, cfg, cap, deadline, triples):
    """Expand the first levels here, then hand each frontier class to a worker."""
    frontier = [()]
    seen: set = set()
    depth = 0
    exhausted = False
    while depth < 3 and len(frontier) < 4 * cfg.threads:
        nxt = []
        for edges in frontier:
            for t in triples:
                if t in edges:
                    continue
                cand = list(edges) + [t]
                h = Hypergraph(n, tuple(cand))
                if not _is_free(h, pairs):
                    continue
                solver.offer(cand)
                key = canonical_form(n, cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(tuple(cand))
        if not nxt:
            return exhausted, [0, 0, 0]
        frontier = nxt
        depth += 1
    shared = mp.Value("i", solver.best)
    jobs = [(n, pairs, cfg, cap, deadline, f, solver.best) for f in frontier]
    stats = [0, 0, 0]
    with ProcessPoolExecutor(cfg.threads, initializer=_worker_init, initargs=(shared,)) as pool:
        for best, wit, ex, nodes, bp, ip in pool.map(_worker, jobs):
            exhausted |= ex
            stats[0] += nodes
            stats[1] += bp
            stats[2] += ip
            if best > solver.best:
                solver.best, solver.witness = best, wit
    return exhausted, stats


def compute_f(n: int, s: int, k: int, cfg: SearchConfig | None = None) -> SearchRecord:
    """Maximum edges of an (s, k)-free 3-graph on n vertices."""
    return _solve("f", n, s, k, cfg or SearchConfig())


def compute_g(n: int, k: int, cfg: SearchConfig | None = None) -> SearchRecord:
    """Maximum edges of a (k+2, k)-free 3-graph that is also (l+1, l)-free for 2 <= l < k."""
    return _solve("g", n, k + 2, k, cfg or SearchConfig())


def packing_number(n: int) -> int:
    """Largest partial Steiner triple system on n points."""
    d = (n * ((n - 1) // 2)) // 3
    return d - 1 if n % 6 == 5 else d


@dataclass
class RatioRow:
    n: int
    value: int
    exact: bool

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.value, self.n * self.n)


@dataclass
class RatioTable:
    k: int
    mode: str
    rows: list[RatioRow] = field(default_factory=list)

    @property
    def reference(self) -> Fraction | None:
        return REFERENCE_LIMITS.get(self.k)

    def to_csv(self) -> str:
        ref = self.reference
        lines = [
            f"# k={self.k} mode={self.mode}",
            f"# reference limit of n^-2 f(n;k+2,k): {ref if ref is not None else 'unknown'}"
            + (f" ~ {float(ref):.6f}" if ref is not None else ""),
            "n,value,ratio,exact",
        ]
        for r in self.rows:
            lines.append(f"{r.n},{r.value},{float(r.ratio):.6f},{'exact' if r.exact else 'lower_bound'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        ref = self.reference
        return {
            "k": self.k, "mode": self.mode,
            "reference_limit": None if ref is None else str(ref),
            "rows": [{"n": r.n, "value": r.value, "ratio": float(r.ratio), "exact": r.exact} for r in self.rows],
        }


def ratio_table(k: int, n_range, mode: str = "f", cfg: SearchConfig | None = None, cache=None) -> RatioTable:
    table = RatioTable(k, mode)
    for n in n_range:
        rec = cache.get(mode, n, k + 2, k) if cache is not None else None
        if rec is None:
            rec = compute_f(n, k + 2, k, cfg) if mode == "f" else compute_g(n, k, cfg)
            if cache is not None:
                cache.put(rec)
        table.rows.append(RatioRow(n, rec.value, rec.exact))
    return table
