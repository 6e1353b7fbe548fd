"""Command-line front end.

Exit codes: 0 success / property holds, 1 mathematical violation or non-free
input, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import hypercore
from .configs import (
    Configuration,
    find_configuration,
    freeness_report,
    has_configuration,
    is_f_free,
    is_g_free,
)
from .extremal import (
    REFERENCE_LIMITS,
    ResultsCache,
    SearchConfig,
    compute_f,
    compute_g,
    gen_planted_free,
    gen_random_free,
    ratio_table,
)
from .hypercore import HypergraphError
from .shadowbound import edge_bound_check, quadratic_bound_holds, verify_component_claims
from .sparsifier import InvariantViolation, NotFreeError, extract_free_subgraph

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("configlab")


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text_rows: list[tuple[str, object]]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=1, default=str))
    else:
        width = max((len(k) for k, _ in text_rows), default=0)
        for key, val in text_rows:
            print(f"{key:<{width}}  {val}")


def _load(path: str) -> hypercore.Hypergraph:
    try:
        return hypercore.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except HypergraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _witness_ok(h, conf: Configuration, s: int, k: int) -> bool:
    again = Configuration.of(h, conf.edges)
    return again.is_config(s, k)


# -- subcommands -------------------------------------------------------------------------


def cmd_check_free(args) -> int:
    h = _load(args.input)
    rep = freeness_report(h, args.k)
    free = rep.is_f_free if args.mode == "f" else rep.is_g_free
    # the claim is re-derived before printing
    if free and not (is_f_free(h, args.k) if args.mode == "f" else is_g_free(h, args.k)):
        raise InvariantViolation("freeness report disagrees with the predicate")
    payload = {"mode": args.mode, "free": free, **rep.to_json()}
    if not free:
        if args.mode == "f":
            wit = find_configuration(h, args.k + 2, args.k)
        else:
            wit = rep.first_violation
        payload["witness"] = wit.to_json()
        payload["witness_edges"] = [list(h.edges[i]) for i in wit.edges]
        if not _witness_ok(h, wit, wit.span_size, wit.ell):  # pragma: no cover
            raise InvariantViolation("witness failed re-verification")
    rows = [("input", args.input), ("k", args.k), ("mode", args.mode), ("free", free)]
    if not free:
        rows.append(("witness", payload["witness"]["edges"]))
        rows.append(("witness_edges", payload["witness_edges"]))
    _emit(args, payload, rows)
    return EXIT_OK if free else EXIT_VIOLATION


def cmd_extract(args) -> int:
    h = _load(args.input)
    try:
        out, trace = extract_free_subgraph(h, args.k)
    except NotFreeError as exc:
        wit = exc.witness
        payload = {"error": str(exc), "witness": None if wit is None else wit.to_json()}
        _emit(args, payload, [("error", str(exc)), ("witness", payload["witness"])])
        return EXIT_VIOLATION
    if not is_g_free(out, args.k):  # pragma: no cover - extract already asserts this
        raise InvariantViolation("extraction output is not g-free")
    text = hypercore.write_hypergraph(out)
    if args.output:
        Path(args.output).write_text(text)
    if args.trace:
        Path(args.trace).write_text(trace.to_jsonl())
    summary = trace.summary()
    summary["kept"] = list(trace.kept)
    if args.output:
        _emit(args, summary, list(summary.items()))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_gen_spec(spec: str) -> dict:
    body = spec[4:] if spec.startswith("gen:") else spec
    out = {"n": 15, "count": 10, "seed": 0, "planted": 1, "multi": 0}
    for part in filter(None, body.split(",")):
        key, _, val = part.partition("=")
        if key not in out:
            raise UsageError(f"unknown generator field {key!r} in {spec!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"bad value for {key!r} in {spec!r}") from None
    return out


def _corpus(spec: str, k: int):
    path = Path(spec)
    if path.is_dir():
        for f in sorted(path.iterdir()):
            if f.suffix in (".txt", ".hg", ".json"):
                yield str(f), _load(str(f))
        return
    if not (spec.startswith("gen:") or "=" in spec):
        raise UsageError(f"corpus {spec!r} is neither a directory nor a generator spec")
    g = _parse_gen_spec(spec)
    for i in range(g["count"]):
        seed = g["seed"] + i
        if g["planted"]:
            h = gen_planted_free(g["n"], k, seed=seed, multi=bool(g["multi"]))
        else:
            h = gen_random_free(g["n"], k, "f", seed=seed)
        yield f"gen[n={g['n']},seed={seed}]", h


def cmd_verify_lemmas(args) -> int:
    k = args.k
    counts = {"instances": 0, "non_free": 0, "extraction_steps": 0, "structural_checks": 0,
              "component_claims": 0, "edge_bounds": 0, "failures": 0}
    failures = []
    for name, h in _corpus(args.corpus, k):
        counts["instances"] += 1
        try:
            out, trace = extract_free_subgraph(h, k)
        except NotFreeError as exc:
            counts["non_free"] += 1
            failures.append({"instance": name, "error": str(exc)})
            continue
        except InvariantViolation as exc:
            counts["failures"] += 1
            failures.append({"instance": name, "error": str(exc)})
            continue
        counts["extraction_steps"] += len(trace.steps)
        counts["structural_checks"] += 4 * len(trace.steps)
        rep = verify_component_claims(out, k)
        counts["component_claims"] += len(rep.components)
        _, holds = edge_bound_check(out, k, check=False)
        counts["edge_bounds"] += 1
        if not (rep.all_hold and holds and quadratic_bound_holds(out.e, out.n, k)):
            counts["failures"] += 1
            failures.append({"instance": name, "error": "shadow claims or edge bound failed"})
    if counts["instances"] == 0:
        print("warning: empty corpus", file=sys.stderr)
    status = EXIT_OK if not failures else EXIT_VIOLATION
    _emit(args, {**counts, "failed": failures, "ok": status == EXIT_OK},
          list(counts.items()) + [(f"FAILED {f['instance']}", f["error"]) for f in failures])
    return status


def _search_config(args) -> SearchConfig:
    initial = _load(args.initial) if getattr(args, "initial", None) else None
    return SearchConfig(
        max_nodes=args.budget_nodes, time_budget=args.budget_secs, threads=args.threads,
        symmetry=not args.no_symmetry, initial=initial, max_n=args.max_n,
    )


def cmd_search_extremal(args) -> int:
    s = args.s if args.s is not None else args.k + 2
    cache = ResultsCache(args.cache)
    rec = cache.get(args.mode, args.n, s, args.k)
    if rec is None:
        cfg = _search_config(args)
        rec = compute_f(args.n, s, args.k, cfg) if args.mode == "f" else compute_g(args.n, args.k, cfg)
        cache.put(rec)
    pairs_ok = not any(
        has_configuration(rec.witness, ss, kk)
        for ss, kk in ([(s, args.k)] if args.mode == "f" else [(args.k + 2, args.k)] + [(l + 1, l) for l in range(2, args.k)])
    )
    if not pairs_ok:  # pragma: no cover
        raise InvariantViolation("cached witness fails the freeness check")
    if args.format == "json":
        print(json.dumps(rec.to_json(), indent=1))
    elif args.format == "csv":
        print("mode,n,s,k,value,exact")
        print(f"{rec.mode},{rec.n},{rec.s},{rec.k},{rec.value},{'exact' if rec.exact else 'lower_bound'}")
    else:
        print(rec.value if rec.exact else f">= {rec.value} (budget exhausted; lower bound only)")
    return EXIT_OK


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(int(lo), int(lo) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None


def cmd_ratio_table(args) -> int:
    table = ratio_table(args.k, _parse_range(args.n), args.mode, _search_config(args), ResultsCache(args.cache))
    if args.format == "json":
        print(json.dumps(table.to_json(), indent=1))
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def cmd_gen_random(args) -> int:
    if args.planted:
        h = gen_planted_free(args.n, args.k, seed=args.seed, multi=args.multi)
        ok = is_f_free(h, args.k)
    else:
        h = gen_random_free(args.n, args.k, args.mode, seed=args.seed)
        ok = is_f_free(h, args.k) if args.mode == "f" else is_g_free(h, args.k)
    if not ok:  # pragma: no cover
        raise InvariantViolation("generated hypergraph failed its self-check")
    hypercore.save(h, args.output)
    _emit(args, {"output": args.output, "n": h.n, "edges": h.e, "self_check": ok},
          [("output", args.output), ("n", h.n), ("edges", h.e), ("self_check", "passed")])
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------


def _positive(text: str) -> int:
    val = int(text)
    if val <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def _k(text: str) -> int:
    val = int(text)
    if val < 2:
        raise argparse.ArgumentTypeError("k must be at least 2")
    return val


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="configlab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default=choices[0])

    sp = sub.add_parser("check-free", help="test (k+2,k)- or g-freeness of a hypergraph file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--mode", choices=("f", "g"), default="f")
    fmt(sp, ("json", "text"))
    sp.set_defaults(func=cmd_check_free)

    sp = sub.add_parser("extract", help="delete k-maximal configurations until g-free")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--output")
    sp.add_argument("--trace")
    fmt(sp)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("verify-lemmas", help="run the structural and shadow checks over a corpus")
    sp.add_argument("--corpus", required=True, help="directory or gen:n=15,count=100,seed=1[,planted=0|1][,multi=0|1]")
    sp.add_argument("--k", type=_k, required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_verify_lemmas)

    def search_flags(sp):
        sp.add_argument("--mode", choices=("f", "g"), default="f")
        sp.add_argument("--budget-nodes", type=_positive, default=5_000_000)
        sp.add_argument("--budget-secs", type=float, default=None)
        sp.add_argument("--threads", type=_positive, default=1)
        sp.add_argument("--no-symmetry", action="store_true")
        sp.add_argument("--max-n", type=_positive, default=10)
        sp.add_argument("--cache", default=None, help="results cache path (default: $CONFIGLAB_CACHE)")

    sp = sub.add_parser("search-extremal", help="exact f or g value for small n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--initial", default=None, help="known free hypergraph to seed the incumbent")
    search_flags(sp)
    fmt(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_search_extremal)

    sp = sub.add_parser("ratio-table", help="value / n^2 table against the known limit")
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--n", required=True, help="range A..B")
    search_flags(sp)
    fmt(sp, ("csv", "json"))
    sp.set_defaults(func=cmd_ratio_table)

    sp = sub.add_parser("gen-random", help="random greedy free hypergraph")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--mode", choices=("f", "g"), default="f")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--planted", action="store_true", help="plant dense gadgets first (f-free only)")
    sp.add_argument("--multi", action="store_true", help="allow repeated edges among the gadgets")
    fmt(sp)
    sp.set_defaults(func=cmd_gen_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
