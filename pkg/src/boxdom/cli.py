"""Command-line entry point: ``boxdom <subcommand> ...``.

Exit codes: 0 success, 1 usage or config error, 2 I/O error, 3 invariant
violation (a bug flag), 4 counterexample candidate found by ``hunt``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .cells import build_cells
from .domination import enumerate_m, gamma_exact, minimum_dominating_sets
from .errors import BoxdomError, ConfigError, HypothesisViolated, InvariantViolation, IoError
from .graph import FACTOR_CAP, PRODUCT_CAP, VertexSet, cartesian_product, parse_graph6, to_graph6
from .harness import (
    SweepHalted,
    enumerate_minimum_dominating_sets,
    hunt_conjecture,
    load_config,
    load_dump,
    sweep,
)
from .hypothesis import classify
from .replay import replay_theorem1, replay_theorem_main

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVARIANT, EXIT_CANDIDATE = 0, 1, 2, 3, 4

log = logging.getLogger("boxdom")


class UsageError(BoxdomError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for sweep/hunt")
    common.add_argument("--max-n", type=int, default=None, help="factor order cap")
    common.add_argument("--max-product", type=int, default=None, help="product order cap")
    common.add_argument("--dump-dir", default=None, help="where instance dumps are written (default ./dumps)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="boxdom", description="Domination in Cartesian products of graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gamma", parents=[common], help="exact domination number")
    p.add_argument("graph")

    p = sub.add_parser("product", parents=[common], help="Cartesian product of two graphs")
    p.add_argument("g")
    p.add_argument("h")

    p = sub.add_parser("mds", parents=[common], help="minimal dominating sets containing a set")
    p.add_argument("graph")
    p.add_argument("--containing", type=_int_list, default=[])
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--minimum", action="store_true", help="list minimum dominating sets instead")

    p = sub.add_parser("cells", parents=[common], help="cell partition around a minimum dominating set")
    p.add_argument("graph")
    p.add_argument("--dominators", type=_int_list, required=True)

    p = sub.add_parser("classify", parents=[common], help="layer-cover hypotheses of dominating sets")
    p.add_argument("g", nargs="?")
    p.add_argument("h", nargs="?")
    p.add_argument("--d", type=_int_list, default=None, help="product vertex indices g + h*n_G")
    p.add_argument("--all-min-d", action="store_true", help="every minimum dominating set of the product")
    p.add_argument("--ks", type=_int_list, default=[1, 2, 3])
    p.add_argument("--load", help="instance dump to classify")

    p = sub.add_parser("replay", parents=[common], help="replay the one- or two-set bound")
    p.add_argument("g", nargs="?")
    p.add_argument("h", nargs="?")
    p.add_argument("--d", type=_int_list, default=None)
    p.add_argument("--s1", type=_int_list, default=None)
    p.add_argument("--s2", type=_int_list, default=None)
    p.add_argument("--load", help="instance dump to replay")

    p = sub.add_parser("sweep", parents=[common], help="run a configured sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--plot-dir", default=None, help="also render figures into this directory")

    p = sub.add_parser("hunt", parents=[common], help="search for k-cover counterexample candidates")
    p.add_argument("--k", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--config", required=True)
    return parser


def _emit(args, payload, text: str | None = None, rows: list[dict] | None = None):
    fmt = args.format or "json"
    if fmt == "json":
        out = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    elif fmt == "csv":
        rows = rows if rows is not None else [payload]
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        out = buf.getvalue()
    else:
        out = (text if text is not None else json.dumps(payload, sort_keys=True)) + "\n"
    if args.out:
        try:
            Path(args.out).parent.mkdir(parents=True, exist_ok=True)
            Path(args.out).write_text(out)
        except OSError as exc:
            raise IoError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(out)


def _graph(text: str, args):
    return parse_graph6(text, max_n=args.max_n or FACTOR_CAP)


def _product(args, g, h):
    return cartesian_product(g, h, max_n=args.max_product or PRODUCT_CAP)


def cmd_gamma(args) -> int:
    g = _graph(args.graph, args)
    res = gamma_exact(g)
    payload = {"g6": to_graph6(g), "n": g.n, "gamma": res.gamma,
               "witness": list(res.witness.members), "nodes_explored": res.nodes_explored}
    _emit(args, payload, f"gamma = {res.gamma}  witness = {list(res.witness.members)}  nodes = {res.nodes_explored}")
    return EXIT_OK


def cmd_product(args) -> int:
    g, h = _graph(args.g, args), _graph(args.h, args)
    p = _product(args, g, h)
    payload = {
        "g6_G": to_graph6(g), "g6_H": to_graph6(h), "n": p.n, "edges": p.graph.edge_count,
        "g6_product": to_graph6(p.graph), "encoding": "g + h*n_G",
    }
    _emit(args, payload, payload["g6_product"])
    return EXIT_OK


def cmd_mds(args) -> int:
    g = _graph(args.graph, args)
    if args.minimum:
        found = minimum_dominating_sets(g)
        if args.limit is not None:
            found = found[:args.limit]
    else:
        found = enumerate_m(g, VertexSet.of(g.n, args.containing), limit=args.limit)
    sets = [list(s.members) for s in found]
    payload = {"g6": to_graph6(g), "containing": args.containing, "minimum": args.minimum, "sets": sets}
    _emit(args, payload, "\n".join(" ".join(map(str, s)) for s in sets),
          rows=[{"index": i, "set": s} for i, s in enumerate(sets)])
    return EXIT_OK


def cmd_cells(args) -> int:
    g = _graph(args.graph, args)
    c = build_cells(g, args.dominators)
    payload = {"g6": to_graph6(g), **c.to_dict()}
    text = "\n".join(f"pi_{i + 1} (g={gi}): {list(cell.members)}" for i, (gi, cell) in enumerate(zip(c.dominators, c.cells)))
    _emit(args, payload, text,
          rows=[{"cell": i, "dominator": gi, "members": list(cell.members)} for i, (gi, cell) in enumerate(zip(c.dominators, c.cells))])
    return EXIT_OK


def _instance(args):
    """Factors, product, D and optional cover sets, from a dump or from arguments."""
    if args.load:
        inst = load_dump(args.load)
        return inst.g, inst.h, inst.product, [inst.d], inst.sets
    if not (args.g and args.h):
        raise UsageError("two graph6 factors are required unless --load is given")
    g, h = _graph(args.g, args), _graph(args.h, args)
    p = _product(args, g, h)
    return g, h, p, None, None


def cmd_classify(args) -> int:
    g, h, p, ds, _ = _instance(args)
    if ds is None:
        if args.d is not None:
            ds = [VertexSet.of(p.n, args.d)]
        elif args.all_min_d:
            ds = enumerate_minimum_dominating_sets(p)
        else:
            ds = enumerate_minimum_dominating_sets(p)[:1]
    results = []
    for d in ds:
        rep = classify(p, d, args.ks)
        results.append({"d": [list(p.coords(v)) for v in d], "d_index": list(d.members), "size": len(d),
                        "hypothesis_flags": rep.to_dict()})
    payload = {"g6_G": to_graph6(g), "g6_H": to_graph6(h), "sets": results}
    text = "\n".join(
        f"{r['d_index']}: " + " ".join(f"{k}={r['hypothesis_flags'][k]}" for k in
                                      ("theorem1", "theorem_main_2sets", "corollary2sets", "conjecture1", "min_cover_k"))
        for r in results
    )
    rows = [{"d_index": r["d_index"], **{k: v for k, v in r["hypothesis_flags"].items() if not isinstance(v, (dict, list)) or k == "k_cover"}}
            for r in results]
    _emit(args, payload, text, rows=rows)
    return EXIT_OK


def cmd_replay(args) -> int:
    g, h, p, ds, sets = _instance(args)
    if ds is None:
        if args.d is None or args.s1 is None:
            raise UsageError("replay needs --d and --s1 (or --load)")
        d = VertexSet.of(p.n, args.d)
        sets = [VertexSet.of(g.n, args.s1)]
        if args.s2 is not None:
            sets.append(VertexSet.of(g.n, args.s2))
    else:
        d = ds[0]
        if args.s1 is not None:
            sets = [VertexSet.of(g.n, args.s1)] + ([VertexSet.of(g.n, args.s2)] if args.s2 is not None else [])
    dump_dir = args.dump_dir or "./dumps"
    if not sets:
        raise UsageError("no cover sets to replay")
    if len(sets) == 1:
        report = replay_theorem1(g, h, d, sets[0], dump_dir=dump_dir)
    elif len(sets) == 2:
        report = replay_theorem_main(g, h, d, sets[0], sets[1], dump_dir=dump_dir)
    else:
        raise HypothesisViolated(f"{len(sets)} cover sets given; only one- and two-set bounds have a replay")
    payload = {"g6_G": to_graph6(g), "g6_H": to_graph6(h), "d_index": list(d.members), **report.to_dict()}
    _emit(args, payload, report.transcript(),
          rows=[{"name": s.name, "anchor": s.anchor, "verdict": s.verdict} for s in report.steps])
    return EXIT_OK


def _sweep_config(args):
    cfg = load_config(args.config)
    for key in ("jobs", "max_n", "max_product", "dump_dir", "out", "format"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "plot_dir", None):
        cfg.plot_dir = args.plot_dir
    cfg.validate()
    args.format = cfg.format
    args.out = cfg.out
    return cfg


def _sweep_rows(report: dict) -> list[dict]:
    rows = []
    for rec in report["pairs"]:
        for j, s in enumerate(rec.get("sets", [])):
            hf = s["hypothesis_flags"]
            rows.append({
                "pair_index": rec["index"], "set_index": j, "g6_G": rec["g6_G"], "g6_H": rec["g6_H"],
                "gamma_G": rec["gamma_G"], "gamma_H": rec["gamma_H"], "gamma_product": rec["gamma_product"],
                "d_size": s["size"], "theorem1": hf["theorem1"], "theorem_main_2sets": hf["theorem_main_2sets"],
                "corollary2sets": hf["corollary2sets"], "conjecture1": hf["conjecture1"],
                "min_cover_k": hf["min_cover_k"], "replays": len(s["replay"]),
                "replays_passed": sum(r["final_verdict"] == "pass" for r in s["replay"]),
            })
    return rows


def _sweep_text(report: dict) -> str:
    t = report["tallies"]
    lines = [
        f"pairs {t['pairs']} (skipped {t['pairs_skipped']})  sets {t['sets']}  cs certificates {t['cs_certificates']}",
        f"gamma(GxH) >= gamma(G)gamma(H) on {t['product_bound_holds']}/{t['pairs']} pairs",
        "flags " + "  ".join(f"{k}={v}" for k, v in t["flags"].items()),
        "k-cover " + "  ".join(f"k={k}:{v}" for k, v in t["k_cover"].items()),
        "replays " + "  ".join(f"{k}={v}" for k, v in t["replays"].items()),
        f"violations {len(report['violations'])}",
    ]
    return "\n".join(lines)


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    code = EXIT_OK
    try:
        report = sweep(cfg)
    except SweepHalted as exc:
        report = exc.report
        log.error("sweep halted: %s", exc)
        code = EXIT_INVARIANT
    _emit(args, report, _sweep_text(report), rows=_sweep_rows(report))
    if cfg.plot_dir:
        from .plotting import render_sweep_figures

        render_sweep_figures(report, cfg.plot_dir)
    return code


def cmd_hunt(args) -> int:
    cfg = _sweep_config(args)
    result = hunt_conjecture(cfg, args.k)
    cands = result["candidates"]
    text = (f"k={args.k}: {result['pairs_checked']} pairs, {result['sets_checked']} sets below the product bound checked, "
            f"{len(cands)} candidate(s)")
    _emit(args, result, text, rows=[{k: v for k, v in c.items()} for c in cands])
    if not cands:
        return EXIT_OK
    if args.k <= 2:
        log.error("k=%d cover below gamma(G)gamma(H): this contradicts a proved bound", args.k)
        return EXIT_INVARIANT
    return EXIT_CANDIDATE


COMMANDS = {
    "gamma": cmd_gamma,
    "product": cmd_product,
    "mds": cmd_mds,
    "cells": cmd_cells,
    "classify": cmd_classify,
    "replay": cmd_replay,
    "sweep": cmd_sweep,
    "hunt": cmd_hunt,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"boxdom: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (IoError, OSError) as exc:
        print(f"boxdom: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, BoxdomError, ValueError) as exc:
        print(f"boxdom: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
