"""Deleting k-maximal configurations until the hypergraph is g-free.

Each round picks an (l+1, l)-configuration, grows it to a k-maximal one,
checks the four structural facts that bound the damage, and deletes its
vertices.  Every inequality is compared in integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .configs import (
    Configuration,
    find_configuration,
    freeness_report,
    grow_k_maximal,
    is_g_free,
    is_k_maximal,
)
from .hypercore import Hypergraph, delete_vertices, iter_bits, to_mask


class InvariantViolation(AssertionError):
    """A proven inequality or structural fact failed; carries the witness."""


class NotFreeError(ValueError):
    """The input is not (k+2, k)-free."""

    def __init__(self, message: str, witness: Configuration | None = None):
        super().__init__(message)
        self.witness = witness


class NotKMaximalError(ValueError):
    pass


@dataclass(frozen=True)
class EdgePartition:
    """Edges meeting V(S), split by how many of their vertices lie in V(S)."""

    E1: tuple[int, ...]
    E2: tuple[int, ...]
    E3: tuple[int, ...]

    @property
    def total(self) -> int:
        return len(self.E1) + len(self.E2) + len(self.E3)


@dataclass(frozen=True)
class LinkGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def is_forest(self) -> bool:
        return len(self.edges) == len(self.vertices) - len(self.components)

    @property
    def max_component_size(self) -> int:
        return max((len(c) for c in self.components), default=0)


@dataclass(frozen=True)
class StructuralReport:
    partition: EdgePartition
    link: LinkGraph
    ell: int
    inside_ok: bool          # |E3| <= k-1
    no_two_in: bool          # E2 empty
    outside_pairs_distinct: bool  # |E1| = e(link)
    forest_ok: bool          # link graph is a forest with components of <= k-l vertices

    @property
    def all_hold(self) -> bool:
        return self.inside_ok and self.no_two_in and self.outside_pairs_distinct and self.forest_ok

    def verdicts(self) -> dict[str, bool]:
        return {
            "inside_at_most_k_minus_1": self.inside_ok,
            "no_edge_with_two_in_span": self.no_two_in,
            "outside_pairs_distinct": self.outside_pairs_distinct,
            "link_forest_small_components": self.forest_ok,
        }


def _components(vertices, edges) -> tuple[tuple[int, ...], ...]:
    parent = {v: v for v in vertices}

    def root(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = root(a), root(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in vertices:
        groups.setdefault(root(v), []).append(v)
    return tuple(sorted(tuple(g) for g in groups.values()))


def edge_partition(h: Hypergraph, conf: Configuration) -> EdgePartition:
    vs = h.span_mask(to_mask(conf.edges))
    parts: dict[int, list[int]] = {1: [], 2: [], 3: []}
    for i, m in enumerate(h.edge_masks):
        c = (m & vs).bit_count()
        if c:
            parts[c].append(i)
    return EdgePartition(tuple(parts[1]), tuple(parts[2]), tuple(parts[3]))


def link_graph(h: Hypergraph, conf: Configuration, partition: EdgePartition | None = None) -> LinkGraph:
    partition = partition or edge_partition(h, conf)
    vs = h.span_mask(to_mask(conf.edges))
    vertices = tuple(v for v in range(h.n) if not vs >> v & 1)
    pairs = sorted({tuple(iter_bits(h.edge_masks[i] & ~vs)) for i in partition.E1})
    return LinkGraph(vertices, tuple(pairs), _components(vertices, pairs))


def structural_checks(h: Hypergraph, conf: Configuration, k: int) -> StructuralReport:
    """Partition, link graph and the four structural verdicts for a k-maximal ``conf``.

    Raises :class:`NotKMaximalError` when ``conf`` is not k-maximal.  False
    verdicts are reported, not raised; callers decide how loudly to fail.
    """
    conf = Configuration.of(h, conf.edges)
    try:
        maximal = is_k_maximal(h, conf, k)
    except ValueError as exc:
        raise NotKMaximalError(str(exc)) from None
    if not maximal:
        raise NotKMaximalError(f"configuration {conf.edges} is not {k}-maximal")
    part = edge_partition(h, conf)
    link = link_graph(h, conf, part)
    return StructuralReport(
        partition=part,
        link=link,
        ell=conf.ell,
        inside_ok=len(part.E3) <= k - 1,
        no_two_in=not part.E2,
        outside_pairs_distinct=len(part.E1) == len(link.edges),
        forest_ok=link.is_forest and link.max_component_size <= k - conf.ell,
    )


# -- extraction ----------------------------------------------------------------------


def step_bound(k: int, v: int, v_s: int) -> Fraction:
    """Allowed edge loss when deleting V(S): (1 - 1/k)(v - v(S)) + (k - 1)."""
    return Fraction(k - 1, k) * (v - v_s) + (k - 1)


def aggregate_bound(k: int, v: int, v_out: int) -> Fraction:
    """(1/6)(1 - 1/k)(v - v')(v + v' + 2k)."""
    return Fraction(k - 1, 6 * k) * (v - v_out) * (v + v_out + 2 * k)


def step_bound_holds(k: int, loss: int, v: int, v_s: int) -> bool:
    return k * loss <= (k - 1) * (v - v_s) + k * (k - 1)


def aggregate_bound_holds(k: int, loss: int, v: int, v_out: int) -> bool:
    return 6 * k * loss <= (k - 1) * (v - v_out) * (v + v_out + 2 * k)


@dataclass
class ExtractionStep:
    ell: int
    config_edges: list[list[int]]      # original labels
    config_vertices: list[int]         # original labels
    E1: int
    E2: int
    E3: int
    link_edges: int
    link_forest: bool
    link_components: int
    link_max_component: int
    verdicts: dict[str, bool]
    v_before: int
    e_before: int
    v_after: int
    e_after: int
    loss: int
    loss_bound_num: int
    loss_bound_den: int
    loss_ok: bool

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ExtractionTrace:
    k: int
    v_in: int
    e_in: int
    steps: list[ExtractionStep] = field(default_factory=list)
    kept: tuple[int, ...] = ()         # kept[i] = original label of output vertex i
    v_out: int = 0
    e_out: int = 0

    @property
    def total_loss(self) -> int:
        return self.e_in - self.e_out

    @property
    def aggregate_ok(self) -> bool:
        return aggregate_bound_holds(self.k, self.total_loss, self.v_in, self.v_out)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_json()) + "\n" for s in self.steps)

    def summary(self) -> dict:
        bound = aggregate_bound(self.k, self.v_in, self.v_out)
        return {
            "k": self.k, "v_in": self.v_in, "e_in": self.e_in, "v_out": self.v_out,
            "e_out": self.e_out, "steps": len(self.steps), "loss": self.total_loss,
            "aggregate_bound_num": bound.numerator, "aggregate_bound_den": bound.denominator,
            "aggregate_ok": self.aggregate_ok,
        }


def seed_configuration(h: Hypergraph, k: int) -> Configuration | None:
    """Least (l+1, l)-configuration, trying l = 2, 3, ..., k-1 in turn."""
    for ell in range(2, k):
        conf = find_configuration(h, ell + 1, ell)
        if conf is not None:
            return conf
    return None


def extract_free_subgraph(h: Hypergraph, k: int, check_input: bool = True) -> tuple[Hypergraph, ExtractionTrace]:
    """Delete k-maximal configurations until no (l+1, l)-configuration is left.

    Raises :class:`NotFreeError` for input that is not (k+2, k)-free and
    :class:`InvariantViolation` if any structural verdict or loss bound fails.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if check_input:
        report = freeness_report(h, k)
        if not report.is_f_free:
            raise NotFreeError(f"input is not ({k + 2},{k})-free", report.first_violation)
    trace = ExtractionTrace(k=k, v_in=h.n, e_in=h.e)
    cur, labels = h, tuple(range(h.n))
    while True:
        seed = seed_configuration(cur, k)
        if seed is None:
            break
        conf = grow_k_maximal(cur, seed, k)
        rep = structural_checks(cur, conf, k)
        vs = sorted(conf.vertices(cur))
        nxt, kept = delete_vertices(cur, vs, return_map=True)
        loss = cur.e - nxt.e
        bound = step_bound(k, cur.n, len(vs))
        step = ExtractionStep(
            ell=conf.ell,
            config_edges=[[labels[v] for v in cur.edges[i]] for i in conf.edges],
            config_vertices=[labels[v] for v in vs],
            E1=len(rep.partition.E1), E2=len(rep.partition.E2), E3=len(rep.partition.E3),
            link_edges=len(rep.link.edges), link_forest=rep.link.is_forest,
            link_components=len(rep.link.components),
            link_max_component=rep.link.max_component_size,
            verdicts=rep.verdicts(),
            v_before=cur.n, e_before=cur.e, v_after=nxt.n, e_after=nxt.e,
            loss=loss, loss_bound_num=bound.numerator, loss_bound_den=bound.denominator,
            loss_ok=step_bound_holds(k, loss, cur.n, len(vs)),
        )
        trace.steps.append(step)
        if not rep.all_hold or not step.loss_ok or loss != rep.partition.total:
            raise InvariantViolation(f"structural check failed at step {len(trace.steps)}: {step}")
        cur, labels = nxt, tuple(labels[v] for v in kept)
    trace.kept, trace.v_out, trace.e_out = labels, cur.n, cur.e
    if not is_g_free(cur, k):
        raise InvariantViolation(f"extraction output is not g-free for k={k}")
    if not trace.aggregate_ok:
        raise InvariantViolation(f"aggregate loss bound failed: {trace.summary()}")
    return cur, trace


# -- the dense large-subgraph guarantee ------------------------------------------------


@dataclass(frozen=True)
class DenseCertificate:
    k: int
    v_in: int
    e_in: int
    v_out: int
    e_out: int
    hypotheses_met: bool
    # v' >= v / sqrt(4k), compared as 4k v'^2 >= v^2
    size_lhs: int
    size_rhs: int
    # e'/v'^2 >= e/v^2, compared as e' v^2 >= e v'^2
    density_lhs: int
    density_rhs: int

    @property
    def size_holds(self) -> bool:
        return self.size_lhs >= self.size_rhs

    @property
    def density_holds(self) -> bool:
        return self.v_out > 0 and self.density_lhs >= self.density_rhs

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "hypotheses unmet - conclusions not asserted"
        return "asserted"

    def to_json(self) -> dict:
        out = asdict(self)
        out.update(size_holds=self.size_holds, density_holds=self.density_holds, status=self.status,
                   min_v_out=self.v_in / math.sqrt(4 * self.k))
        return out


def dense_hypotheses(h: Hypergraph, k: int) -> bool:
    """v >= 8k^2 and e >= (1/6)(1 - 1/(2k)) v^2."""
    return h.n >= 8 * k * k and 12 * k * h.e >= (2 * k - 1) * h.n * h.n


def dense_extract_with_certificate(h: Hypergraph, k: int) -> tuple[Hypergraph, DenseCertificate, ExtractionTrace]:
    out, trace = extract_free_subgraph(h, k)
    v, e, v2, e2 = h.n, h.e, out.n, out.e
    cert = DenseCertificate(
        k=k, v_in=v, e_in=e, v_out=v2, e_out=e2,
        hypotheses_met=dense_hypotheses(h, k),
        size_lhs=4 * k * v2 * v2, size_rhs=v * v,
        density_lhs=e2 * v * v, density_rhs=e * v2 * v2,
    )
    if cert.hypotheses_met and not (cert.size_holds and cert.density_holds):
        raise InvariantViolation(f"dense-subgraph conclusions failed: {cert.to_json()}")
    return out, cert, trace


__all__ = [
    "DenseCertificate", "EdgePartition", "ExtractionStep", "ExtractionTrace", "InvariantViolation",
    "LinkGraph", "NotFreeError", "NotKMaximalError", "StructuralReport", "aggregate_bound",
    "aggregate_bound_holds", "dense_extract_with_certificate", "dense_hypotheses", "edge_partition",
    "extract_free_subgraph", "link_graph", "seed_configuration", "step_bound", "step_bound_holds",
    "structural_checks",
]
