"""Sweeps over factor pairs, counterexample hunting and report assembly.

Work is split per (G, H) pair; each pair is analysed by a pure worker and the
results are reassembled in pair order, so the report does not depend on the
number of worker processes.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from itertools import combinations
from pathlib import Path
from typing import Iterable

from . import corpus
from .cells import build_cells, verify_clark_suen
from .domination import dominates, domination_number, gamma_exact, minimum_dominating_masks
from .errors import ConfigError, InvariantViolation, IoError, Oversize
from .graph import (
    FACTOR_CAP,
    Graph,
    ProductGraph,
    VertexSet,
    cartesian_product,
    complete_graph,
    cycle_graph,
    lex_key,
    parse_graph6,
    path_graph,
    read_graph6_lines,
    star_graph,
    to_graph6,
)
from .hypothesis import classify, find_k_cover, layer_projections, proper_two_covers
from .replay import replay_theorem1, replay_theorem_main

log = logging.getLogger(__name__)

EXHAUSTIVE_PRODUCT_CAP = 24
FAMILIES = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
}
CORPORA = {"connected": corpus.connected_graphs, "all": corpus.all_graphs}
# keys that change how a run executes or where it writes, never its content
RUNTIME_KEYS = ("jobs", "out", "format", "dump_dir", "plot_dir")


@dataclass
class SweepConfig:
    factors: list[str] = field(default_factory=list)
    factors_h: list[str] | None = None
    max_n: int = 4
    max_product: int = EXHAUSTIVE_PRODUCT_CAP
    ks: tuple[int, ...] = (1, 2, 3)
    enumeration: str = "minimum"
    replay: str = "first"
    jobs: int = 1
    out: str | None = None
    format: str = "json"
    dump_dir: str = "./dumps"
    plot_dir: str | None = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not 1 <= self.max_n <= FACTOR_CAP:
            raise ConfigError(f"max_n must be in 1..{FACTOR_CAP}")
        if self.max_product < 1 or self.max_product > 4096:
            raise ConfigError("max_product must be in 1..4096")
        if any(k < 1 for k in self.ks):
            raise ConfigError("ks must be positive")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.replay not in ("first", "all", "none"):
            raise ConfigError(f"replay must be first, all or none, not {self.replay!r}")
        parse_enumeration(self.enumeration)

    def echo(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name in RUNTIME_KEYS:
                continue
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out


def parse_enumeration(mode: str) -> tuple[str, int]:
    if mode == "minimum":
        return "minimum", 0
    kind, _, arg = mode.partition(":")
    if kind in ("upto", "all-up-to-size", "slack") and arg.isdigit():
        return ("slack" if kind == "slack" else "upto"), int(arg)
    raise ConfigError(f"enumeration must be 'minimum', 'upto:B' or 'slack:B', not {mode!r}")


def _split_list(value) -> list[str]:
    if isinstance(value, list):
        return [str(v).strip() for v in value if str(v).strip()]
    return [v.strip() for v in str(value).split(",") if v.strip()]


def config_from_mapping(data: dict) -> SweepConfig:
    known = {f.name for f in fields(SweepConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    kwargs = {}
    try:
        for key, value in data.items():
            if key in ("factors", "factors_h"):
                kwargs[key] = _split_list(value)
            elif key == "ks":
                kwargs[key] = tuple(int(v) for v in _split_list(value))
            elif key in ("max_n", "max_product", "jobs"):
                kwargs[key] = int(value)
            else:
                kwargs[key] = None if value is None else str(value)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SweepConfig(**kwargs)


def parse_config_text(text: str) -> SweepConfig:
    """A JSON object, or ``key = value`` lines with ``#`` comments."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("JSON config must be an object")
        return config_from_mapping(data)
    data = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        data[key.strip()] = value.strip()
    return config_from_mapping(data)


def load_config(path) -> SweepConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return parse_config_text(text)


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("-")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise ConfigError(f"bad range {text!r}") from None


def read_graph6_file(path) -> list[Graph]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None
    return read_graph6_lines(text.splitlines())


def resolve_source(source: str, max_n: int) -> list[Graph]:
    kind, sep, arg = source.partition(":")
    if sep and kind in CORPORA:
        lo, hi = _parse_range(arg)
        return CORPORA[kind](max_n=min(hi, max_n, corpus.CORPUS_MAX_N), min_n=lo)
    if sep and kind in FAMILIES:
        lo, hi = _parse_range(arg)
        return [FAMILIES[kind](n) for n in range(lo, min(hi, max_n) + 1)]
    path = arg if sep and kind == "file" else source
    return [g for g in read_graph6_file(path) if g.n <= max_n]


def resolve_factors(sources: Iterable[str], max_n: int) -> list[Graph]:
    """Graphs from every source, first occurrence of each graph6 word kept."""
    out, seen = [], set()
    for src in sources:
        for g in resolve_source(src, max_n):
            word = to_graph6(g)
            if word not in seen:
                seen.add(word)
                out.append(g)
    return out


def enumerate_minimum_dominating_sets(p: ProductGraph) -> list[VertexSet]:
    """Every minimum dominating set of the product, lexicographically ordered."""
    return [VertexSet(p.n, m) for m in minimum_dominating_masks(p.graph, max_n=p.n)]


def enumerate_dominating_sets(p: ProductGraph, max_size: int) -> list[VertexSet]:
    """Every dominating set of size at most ``max_size``, by size then lexicographically."""
    if p.n > EXHAUSTIVE_PRODUCT_CAP:
        raise Oversize(f"exhaustive enumeration supports product order <= {EXHAUSTIVE_PRODUCT_CAP}")
    g = p.graph
    out = []
    start = gamma_exact(g, max_n=p.n).gamma
    for r in range(start, min(max_size, p.n) + 1):
        for combo in combinations(range(p.n), r):
            mask = sum(1 << v for v in combo)
            if dominates(g, mask):
                out.append(VertexSet(p.n, mask))
    return out


def _dominating_sets(p: ProductGraph, mode: str, gamma_p: int) -> list[VertexSet]:
    kind, arg = parse_enumeration(mode)
    if kind == "minimum":
        return enumerate_minimum_dominating_sets(p)
    bound = arg if kind == "upto" else gamma_p + arg
    return enumerate_dominating_sets(p, bound)


def _pairs(cfg: SweepConfig) -> list[tuple[int, str, str]]:
    gs = resolve_factors(cfg.factors, cfg.max_n)
    hs = gs if cfg.factors_h is None else resolve_factors(cfg.factors_h, cfg.max_n)
    return [(i, to_graph6(a), to_graph6(b)) for i, (a, b) in enumerate((a, b) for a in gs for b in hs)]


def _settings(cfg: SweepConfig) -> dict:
    return {
        "max_product": cfg.max_product,
        "ks": tuple(cfg.ks),
        "enumeration": cfg.enumeration,
        "replay": cfg.replay,
        "dump_dir": cfg.dump_dir,
    }


def _set_record(p: ProductGraph, d: VertexSet) -> list[list[int]]:
    return [list(p.coords(v)) for v in d]


def analyze_pair(task) -> dict:
    """Everything the sweep reports about one factor pair."""
    index, g6_g, g6_h, settings = task
    g, h = parse_graph6(g6_g), parse_graph6(g6_h)
    record = {"index": index, "g6_G": g6_g, "g6_H": g6_h}
    if g.n * h.n > settings["max_product"]:
        record["skipped"] = f"product order {g.n * h.n} exceeds max_product"
        return {"record": record, "violations": [], "fatal": None}
    try:
        return _analyze(g, h, record, settings)
    except InvariantViolation as exc:
        record["failed"] = str(exc)
        fatal = {"pair": index, "g6_G": g6_g, "g6_H": g6_h, "message": str(exc)}
        if getattr(exc, "dump_path", None):
            fatal["dump"] = exc.dump_path
        return {"record": record, "violations": [], "fatal": fatal}


def _analyze(g: Graph, h: Graph, record: dict, settings: dict) -> dict:
    p = cartesian_product(g, h)
    gamma_g, gamma_h = domination_number(g), domination_number(h)
    gamma_p = gamma_exact(p.graph, max_n=p.n).gamma
    if 2 * gamma_p < gamma_g * gamma_h:
        raise InvariantViolation(f"gamma(G x H) = {gamma_p} below half of {gamma_g * gamma_h}")
    record.update(gamma_G=gamma_g, gamma_H=gamma_h, gamma_product=gamma_p)
    violations = []
    if gamma_p < gamma_g * gamma_h:
        violations.append({"kind": "product_bound", "g6_G": record["g6_G"], "g6_H": record["g6_H"],
                           "gamma_product": gamma_p, "gamma_G": gamma_g, "gamma_H": gamma_h})

    partitions = [build_cells(g, lex_key(m)) for m in minimum_dominating_masks(g)]
    dump_dir = settings["dump_dir"]
    sets = []
    for d in _dominating_sets(p, settings["enumeration"], gamma_p):
        certs = [verify_clark_suen(p, d, c).to_dict(compact=True) for c in partitions]
        rep = classify(p, d, settings["ks"])
        replays = []
        if settings["replay"] != "none":
            if rep.theorem1 is not None:
                replays.append(replay_theorem1(g, h, d, rep.theorem1[0], dump_dir=dump_dir))
            limit = None if settings["replay"] == "all" else 1
            proper = proper_two_covers(g, rep.projections, limit=limit)
            for s1, s2 in proper:
                replays.append(replay_theorem_main(g, h, d, s1, s2, dump_dir=dump_dir))
            if not proper and rep.theorem_main_2sets is not None:
                s1, s2 = rep.theorem_main_2sets
                replays.append(replay_theorem_main(g, h, d, s1, s2, dump_dir=dump_dir))
        if len(d) < gamma_g * gamma_h:
            violations.append({"kind": "set_bound", "g6_G": record["g6_G"], "g6_H": record["g6_H"],
                               "d": _set_record(p, d)})
            if rep.theorem_main_2sets is not None:
                raise InvariantViolation(f"two-set cover holds but |D| = {len(d)} < {gamma_g * gamma_h}")
        sets.append({
            "d": _set_record(p, d),
            "size": len(d),
            "hypothesis_flags": rep.to_dict(compact=True),
            "replay": [r.to_dict(compact=True) for r in replays],
            "cs_certificate": certs,
        })
    record["sets"] = sets
    return {"record": record, "violations": violations, "fatal": None}


def _run_tasks(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=1))


def _tallies(records: list[dict], ks) -> dict:
    flags = ("theorem1", "theorem_main_2sets", "corollary2sets", "conjecture1")
    t = {
        "pairs": 0,
        "pairs_skipped": 0,
        "pairs_failed": 0,
        "sets": 0,
        "cs_certificates": 0,
        "product_bound_holds": 0,
        "flags": {f: 0 for f in flags},
        "k_cover": {str(k): 0 for k in ks},
        "min_cover_k": {},
        "replays": {"theorem1": 0, "theorem_main": 0, "theorem_main_delegated": 0, "passed": 0},
    }
    for rec in records:
        if "skipped" in rec:
            t["pairs_skipped"] += 1
            continue
        if "failed" in rec:
            t["pairs_failed"] += 1
            continue
        t["pairs"] += 1
        if rec["gamma_product"] >= rec["gamma_G"] * rec["gamma_H"]:
            t["product_bound_holds"] += 1
        for s in rec["sets"]:
            t["sets"] += 1
            t["cs_certificates"] += len(s["cs_certificate"])
            hf = s["hypothesis_flags"]
            for f in flags:
                t["flags"][f] += bool(hf[f])
            for k, ok in hf["k_cover"].items():
                t["k_cover"][k] += bool(ok)
            key = str(hf["min_cover_k"])
            t["min_cover_k"][key] = t["min_cover_k"].get(key, 0) + 1
            for r in s["replay"]:
                name = r["theorem"] + ("_delegated" if r["delegated"] else "")
                t["replays"][name] += 1
                t["replays"]["passed"] += r["final_verdict"] == "pass"
    t["min_cover_k"] = dict(sorted(t["min_cover_k"].items()))
    return t


class SweepHalted(InvariantViolation):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def sweep(cfg: SweepConfig) -> dict:
    """Analyse every factor pair; raises :class:`SweepHalted` on the first invariant violation."""
    tasks = [(i, a, b, _settings(cfg)) for i, a, b in _pairs(cfg)]
    log.info("sweep over %d pairs with %d job(s)", len(tasks), cfg.jobs)
    results = _run_tasks(analyze_pair, tasks, cfg.jobs)
    records = [r["record"] for r in results]
    violations = [v for r in results for v in r["violations"]]
    fatal = [r["fatal"] for r in results if r["fatal"]]
    report = {
        "config_echo": cfg.echo(),
        "pairs": records,
        "tallies": _tallies(records, cfg.ks),
        "violations": violations,
    }
    if fatal:
        report["fatal"] = fatal
        raise SweepHalted(fatal[0]["message"], report)
    return report


def hunt_pair(task) -> dict:
    index, g6_g, g6_h, settings, k = task
    g, h = parse_graph6(g6_g), parse_graph6(g6_h)
    out = {"index": index, "g6_G": g6_g, "g6_H": g6_h, "candidates": [], "checked_sets": 0}
    if g.n * h.n > settings["max_product"]:
        out["skipped"] = True
        return out
    p = cartesian_product(g, h)
    gamma_g, gamma_h = domination_number(g), domination_number(h)
    gamma_p = gamma_exact(p.graph, max_n=p.n).gamma
    out["gamma_product"] = gamma_p
    target = gamma_g * gamma_h
    if gamma_p >= target:
        # every enumerated d has |d| >= gamma(G x H), so none can be a candidate
        return out
    if p.n <= EXHAUSTIVE_PRODUCT_CAP:
        below = enumerate_dominating_sets(p, target - 1)
    else:
        below = _dominating_sets(p, settings["enumeration"], gamma_p)
    for j, d in enumerate(below):
        out["checked_sets"] += 1
        if len(d) >= target:
            continue
        cover = find_k_cover(g, layer_projections(p, d), k)
        if cover is not None:
            out["candidates"].append({
                "kind": "counterexample_candidate",
                "pair_index": index,
                "set_index": j,
                "g6_G": g6_g,
                "g6_H": g6_h,
                "gamma_G": gamma_g,
                "gamma_H": gamma_h,
                "d": _set_record(p, d),
                "d_index": list(d.members),
                "d_size": len(d),
                "k": k,
                "cover": [list(s.members) for s in cover],
            })
    return out


def hunt_conjecture(cfg: SweepConfig, k: int) -> dict:
    """Dominating sets below gamma(G) gamma(H) whose layers admit a ``k``-cover.

    For ``k <= 2`` any hit contradicts a proved bound; for ``k = 3`` a hit is
    a refutation candidate.  Every candidate is written to ``cfg.dump_dir``.
    """
    if k < 1:
        raise ConfigError("k must be >= 1")
    tasks = [(i, a, b, _settings(cfg), k) for i, a, b in _pairs(cfg)]
    results = _run_tasks(hunt_pair, tasks, cfg.jobs)
    candidates = [c for r in results for c in r["candidates"]]
    for c in candidates:
        write_dump(cfg.dump_dir, c)
    return {
        "config_echo": cfg.echo(),
        "k": k,
        "pairs_checked": sum(1 for r in results if not r.get("skipped")),
        "pairs_skipped": sum(1 for r in results if r.get("skipped")),
        "sets_checked": sum(r["checked_sets"] for r in results),
        "candidates": candidates,
    }


def dump_name(entry: dict) -> str:
    return f"candidate-k{entry['k']}-pair{entry['pair_index']}-set{entry['set_index']}.json"


def write_dump(dump_dir, entry: dict) -> Path:
    path = Path(dump_dir)
    try:
        path.mkdir(parents=True, exist_ok=True)
        target = path / dump_name(entry)
        target.write_text(dump_text(entry))
    except OSError as exc:
        raise IoError(f"cannot write dump in {dump_dir}: {exc.strerror or exc}") from None
    return target


def dump_text(entry: dict) -> str:
    return json.dumps(entry, indent=1, sort_keys=True) + "\n"


@dataclass
class LoadedInstance:
    g: Graph
    h: Graph
    product: ProductGraph
    d: VertexSet
    sets: list[VertexSet]
    raw: dict


def load_dump(path) -> LoadedInstance:
    """Re-load a candidate or step-failure dump written by :func:`write_dump` or a replay."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not a JSON dump: {exc}") from None
    g, h = parse_graph6(raw["g6_G"]), parse_graph6(raw["g6_H"])
    p = cartesian_product(g, h)
    d = p.set_of(tuple(pair) for pair in raw["d"])
    if "cover" in raw:
        sets = [VertexSet.of(g.n, s) for s in raw["cover"]]
    else:
        sets = [VertexSet.of(g.n, raw[key]) for key in ("s", "s1", "s2") if key in raw]
    return LoadedInstance(g, h, p, d, sets, raw)
