"""Step-by-step replay of the one-set and two-set layer-cover bounds on concrete input.

Both replays take factors G and H, a dominating set D of G x H and the
cover sets, rebuild every intermediate set the argument uses, check every
intermediate claim, and finish with ``|D| >= gamma(G) gamma(H)``.

A failed premise raises :class:`HypothesisViolated`.  A failed step means a
proved claim broke on real input, so it raises :class:`StepFailed` with the
partial report attached and, when ``dump_dir`` is given, writes the instance
to disk.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .cells import vertical_dominated_mask
from .domination import dominates, domination_number, is_minimal_containing_mask, private_neighbor_mask
from .errors import HypothesisViolated, StepFailed
from .graph import Graph, VertexSet, bits, cartesian_product, column_layers, lex_key, to_graph6
from .hypothesis import admissible_mask, layer_projections


def _enc(mask: int) -> list[int]:
    return list(lex_key(mask))


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass
class ReplayStep:
    name: str
    anchor: str
    verdict: str
    witnesses: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "verdict": self.verdict, "witnesses": self.witnesses}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ReplayReport:
    theorem: str
    steps: list[ReplayStep] = field(default_factory=list)
    bound_lhs: int = 0
    bound_rhs: int = 0
    final_verdict: str = "pending"
    swapped: bool = False
    delegated: str | None = None

    @property
    def passed(self) -> bool:
        return self.final_verdict == "pass"

    def transcript(self) -> str:
        lines = [f"{s.name:<22} {s.anchor:<28} {s.verdict}" for s in self.steps]
        lines.append(f"{'bound':<22} {'|D| >= gamma(G)gamma(H)':<28} {self.bound_lhs} >= {self.bound_rhs} {self.final_verdict}")
        return "\n".join(lines)

    def to_dict(self, compact: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "final_verdict": self.final_verdict,
            "bound_lhs": self.bound_lhs,
            "bound_rhs": self.bound_rhs,
            "swapped": self.swapped,
            "delegated": self.delegated,
        }
        if compact:
            out["steps"] = len(self.steps)
        else:
            out["steps"] = [s.to_dict() for s in self.steps]
        return out


class _Instance:
    """Per-replay precomputation: D columns, vertical domination, gammas."""

    def __init__(self, g: Graph, h: Graph, d: VertexSet):
        self.g, self.h = g, h
        self.p = cartesian_product(g, h)
        if d.universe != self.p.n:
            raise HypothesisViolated(f"D is over {d.universe} vertices, product has {self.p.n}")
        if not dominates(self.p.graph, d.mask):
            raise HypothesisViolated("D does not dominate G x H")
        self.d = d
        self.full_h = h.full_mask
        self.cols = [column_layers(self.p, d.mask, x) for x in range(g.n)]
        vdom = vertical_dominated_mask(self.p, d.mask)
        self.vcols = [column_layers(self.p, vdom, x) for x in range(g.n)]
        self.gamma_g = domination_number(g)
        self.gamma_h = domination_number(h)
        self.proj = layer_projections(self.p, d)

    def vdom_on(self, x: int, layers: int) -> bool:
        return layers & ~self.vcols[x] == 0

    def col_size(self, x: int) -> int:
        return self.cols[x].bit_count()


class _Replay:
    def __init__(self, theorem: str, inst: _Instance, dump_dir, instance_info: dict):
        self.report = ReplayReport(theorem)
        self.inst = inst
        self.dump_dir = dump_dir
        self.info = instance_info

    def check(self, name: str, anchor: str, ok: bool, message: str = "", **witnesses):
        step = ReplayStep(name, anchor, "pass" if ok else "fail", witnesses, "" if ok else message)
        self.report.steps.append(step)
        if not ok:
            self.report.final_verdict = "fail"
            dump = _dump(self.dump_dir, self.info, self.report) if self.dump_dir else None
            raise StepFailed(f"{self.report.theorem}: step {name} failed: {message}", self.report, self.info, dump)

    def pooled(self, a: int, ta: int, b: int, tb: int) -> int:
        """Layers whose column vertex is in D: ``a`` over ``ta`` together with ``b`` over ``tb``."""
        return (self.inst.cols[a] & ta) | (self.inst.cols[b] & tb)


def _dump(dump_dir, info: dict, report: ReplayReport) -> str:
    path = Path(dump_dir)
    path.mkdir(parents=True, exist_ok=True)
    blob = json.dumps(info, sort_keys=True)
    name = f"stepfailed-{report.theorem}-{hashlib.sha1(blob.encode()).hexdigest()[:12]}.json"
    payload = {**info, "kind": "step_failed", "report": report.to_dict()}
    (path / name).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    return str(path / name)


def _info(inst: _Instance, sets: dict) -> dict:
    return {
        "g6_G": to_graph6(inst.g),
        "g6_H": to_graph6(inst.h),
        "d": [list(inst.p.coords(v)) for v in inst.d],
        **{k: list(v.members) for k, v in sets.items()},
    }


def _check_dominating_factor(g: Graph, s: VertexSet, label: str):
    if s.universe != g.n:
        raise HypothesisViolated(f"{label} is over {s.universe} vertices, G has {g.n}")
    if not dominates(g, s.mask):
        raise HypothesisViolated(f"{label} = {sorted(s.members)} does not dominate G")


def replay_theorem1(g: Graph, h: Graph, d: VertexSet, s: VertexSet, dump_dir=None) -> ReplayReport:
    """Replay the bound for a single set ``s`` lying in ``M_G(X_h)`` for every layer."""
    inst = _Instance(g, h, d)
    _check_dominating_factor(g, s, "S")
    S = s.mask
    for hv, x in enumerate(inst.proj.masks):
        if not is_minimal_containing_mask(g, S, x):
            raise HypothesisViolated(f"layer {hv}: S is not a minimal dominating set containing X_{hv} = {_enc(x)}")
    run = _Replay("theorem1", inst, dump_dir, _info(inst, {"s": s}))
    full_h, gamma_h = inst.full_h, inst.gamma_h

    priv = {x: private_neighbor_mask(g, S, x) for x in bits(S)}
    s1 = sum(1 << x for x, pm in priv.items() if pm)
    s2 = S & ~s1
    run.check("split", "theorem1/private-split", s1 | s2 == S and s1 & s2 == 0,
              "S1, S2 do not partition S", S1=_enc(s1), S2=_enc(s2))

    outside = g.full_mask & ~S
    bad = [y for y in bits(outside) if inst.cols[y]]
    run.check("outside-empty", "theorem1/outside-columns-empty", not bad,
              f"columns outside S meet D: {bad}", outside=_enc(outside))

    bad = [x for x in bits(s1) if inst.cols[x] != full_h]
    run.check("private-columns", "theorem1/S1xV(H)-in-D", not bad,
              f"columns of S1 not inside D: {bad}",
              private_witness={str(x): _low(priv[x]) for x in bits(s1)})

    partial = [x for x in bits(s2) if inst.cols[x] != full_h]
    bad = [x for x in partial if g.adj[x] & S]
    run.check("isolated-in-S", "theorem1/S2-no-neighbour-in-S", not bad,
              f"S2 vertices with a missing D vertex and a neighbour in S: {bad}", partial_columns=_enc(sum(1 << x for x in partial)))

    bad = [x for x in bits(s2) if not inst.vdom_on(x, full_h)]
    run.check("vertical-columns", "theorem1/H_x-vertically-dominated", not bad,
              f"S2 columns with vertically undominated vertices: {bad}")

    counts = {x: inst.col_size(x) for x in bits(S)}
    bad = [x for x in bits(S) if not dominates(h, inst.cols[x]) or counts[x] < gamma_h]
    run.check("column-counts", "theorem1/|D cap H_x|>=gamma(H)", not bad,
              f"columns below gamma(H) = {gamma_h}: {bad}", counts={str(x): c for x, c in counts.items()})

    total = sum(counts.values())
    lhs, rhs = len(d), inst.gamma_g * gamma_h
    ok = lhs >= total >= S.bit_count() * gamma_h >= rhs
    run.check("bound", "theorem1/|D|>=|S|gamma(H)", ok,
              f"{lhs} >= {total} >= {S.bit_count() * gamma_h} >= {rhs} fails",
              d_size=lhs, column_total=total, s_size=S.bit_count(), gamma_g=inst.gamma_g, gamma_h=gamma_h)
    run.report.bound_lhs, run.report.bound_rhs = lhs, rhs
    run.report.final_verdict = "pass"
    return run.report


def replay_theorem_main(g: Graph, h: Graph, d: VertexSet, s1: VertexSet, s2: VertexSet, dump_dir=None) -> ReplayReport:
    """Replay the bound for two sets ``s1``, ``s2`` such that each layer is served by one of them."""
    inst = _Instance(g, h, d)
    _check_dominating_factor(g, s1, "S1")
    _check_dominating_factor(g, s2, "S2")
    swapped = s1.mask.bit_count() > s2.mask.bit_count()
    if swapped:
        s1, s2 = s2, s1
    S1, S2 = s1.mask, s2.mask
    proj = inst.proj
    T1 = admissible_mask(g, S1, proj)
    T2 = inst.full_h & ~T1
    for hv in bits(T2):
        if not is_minimal_containing_mask(g, S2, proj.masks[hv]):
            raise HypothesisViolated(
                f"layer {hv}: neither S1 nor S2 is a minimal dominating set containing X_{hv} = {_enc(proj.masks[hv])}"
            )
    run = _Replay("theorem_main", inst, dump_dir, _info(inst, {"s1": s1, "s2": s2}))
    run.report.swapped = swapped
    run.check("layer-split", "main/T1-T2", T1 | T2 == inst.full_h and T1 & T2 == 0,
              "T1, T2 do not partition V(H)", T1=_enc(T1), T2=_enc(T2), swapped=swapped)

    if not T1 or not T2:
        single = s2 if not T1 else s1
        sub = replay_theorem1(g, h, d, single, dump_dir=dump_dir)
        rep = run.report
        for step in sub.steps:
            rep.steps.append(ReplayStep(step.name, step.anchor, step.verdict, step.witnesses, step.note))
        rep.bound_lhs, rep.bound_rhs = sub.bound_lhs, sub.bound_rhs
        rep.final_verdict = sub.final_verdict
        rep.delegated = "theorem1"
        return rep

    _replay_two_sets(run, S1, S2, T1, T2)
    return run.report


def _replay_two_sets(run: _Replay, S1: int, S2: int, T1: int, T2: int):
    inst = run.inst
    g, h = inst.g, inst.h
    gamma_h = inst.gamma_h
    cols, vcols = inst.cols, inst.vcols
    S = {1: S1, 2: S2}
    T = {1: T1, 2: T2}
    union = S1 | S2
    outside = g.full_mask & ~union
    only = {1: S1 & ~S2, 2: S2 & ~S1}

    bad = [y for y in bits(outside) if cols[y] or vcols[y]]
    run.check("outside-empty", "main/outside-columns-undominated", not bad,
              f"columns outside S1 u S2 meet or are vertically dominated by D: {bad}", outside=_enc(outside))

    priv = {i: {x: private_neighbor_mask(g, S[i], x) for x in bits(S[i])} for i in (1, 2)}

    # property (i)
    bad, seen = [], {}
    for i in (1, 2):
        for x, pm in priv[i].items():
            if pm & outside:
                seen.setdefault(str(i), []).append(x)
                if T[i] & ~cols[x]:
                    bad.append((i, x))
    run.check("property-i", "main/property-i", not bad,
              f"(i, x) with an outside private neighbour but {{x}} x T_i not in D: {bad}", vertices=seen)

    # property (ii)
    bad, disjunct, vbad = [], {}, []
    for i in (1, 2):
        for x, pm in priv[i].items():
            if pm:
                continue
            in_d = T[i] & ~cols[x] == 0
            isolated = g.adj[x] & S[i] == 0
            disjunct[f"{i}:{x}"] = "both" if in_d and isolated else "column" if in_d else "isolated" if isolated else "none"
            if not (in_d or isolated):
                bad.append((i, x))
            if not inst.vdom_on(x, T[i]):
                vbad.append((i, x))
    run.check("property-ii", "main/property-ii", not bad,
              f"(i, x) without private neighbours violating both disjuncts: {bad}", disjunct=disjunct)
    run.check("property-ii-vertical", "main/property-ii-consequence", not vbad,
              f"(i, x) without private neighbours whose {{x}} x T_i is not vertically dominated: {vbad}")

    # partition (a)/(b)/(c)
    A, B, C = {}, {}, {}
    for i in (1, 2):
        j = 3 - i
        A[i] = sum(1 << x for x, pm in priv[i].items() if pm & outside)
        B[i] = sum(1 << x for x, pm in priv[i].items() if not pm & outside and pm & only[j])
        C[i] = sum(1 << x for x, pm in priv[i].items() if not pm)
    ok = all(A[i] | B[i] | C[i] == S[i] and not (A[i] & B[i] or A[i] & C[i] or B[i] & C[i]) for i in (1, 2))
    run.check("partition-abc", "main/partition-a-b-c", ok, "A_i, B_i, C_i do not partition S_i",
              **{f"{name}{i}": _enc(part[i]) for name, part in (("A", A), ("B", B), ("C", C)) for i in (1, 2)})

    def cls(x, i):
        return "A" if A[i] >> x & 1 else "B" if B[i] >> x & 1 else "C"

    BB = B[1] & B[2]
    cap = (S1 & S2) & ~BB
    cases, failures = {}, []
    for x in bits(cap):
        label = f"{cls(x, 1)}1&{cls(x, 2)}2"
        cases[str(x)] = label
        err = _check_cap_case(inst, x, cls(x, 1), cls(x, 2), T, S, priv, only)
        if err:
            failures.append(f"x={x} ({label}): {err}")
            continue
        if not inst.vdom_on(x, inst.full_h):
            failures.append(f"x={x} ({label}): H_x not vertically dominated")
        elif not dominates(h, cols[x]) or inst.col_size(x) < gamma_h:
            failures.append(f"x={x} ({label}): |D cap H_x| = {inst.col_size(x)} < {gamma_h}")
    run.check("intersection-columns", "main/claim-(S1^S2)-(B1^B2)", not failures, "; ".join(failures),
              cases=cases, counts={str(x): inst.col_size(x) for x in bits(cap)})

    # y_x, z_x
    ymap, zmap, failures = {}, {}, []
    for x in bits(BB):
        yc = priv[2][x] & only[1]
        zc = priv[1][x] & only[2]
        if not yc or not zc:
            failures.append(f"x={x}: missing private neighbour in S1-S2 or S2-S1")
            continue
        y, z = _low(yc), _low(zc)
        ymap[x], zmap[x] = y, z
        if B[1] >> y & 1:
            failures.append(f"y_{x}={y} lies in B1")
        if B[2] >> z & 1:
            failures.append(f"z_{x}={z} lies in B2")
        if not inst.vdom_on(y, T1):
            failures.append(f"{{y_{x}}} x T1 not vertically dominated")
        if T2 & ~vcols[y] & ~cols[x]:
            failures.append(f"(y_{x}, h) for h in T2 neither vertically dominated nor covered by (x, h)")
        if not inst.vdom_on(z, T2):
            failures.append(f"{{z_{x}}} x T2 not vertically dominated")
        if T1 & ~vcols[z] & ~cols[x]:
            failures.append(f"(z_{x}, h) for h in T1 neither vertically dominated nor covered by (x, h)")
        py = run.pooled(y, T1, x, T2)
        pz = run.pooled(z, T2, x, T1)
        if not (dominates(h, py) and py.bit_count() >= gamma_h):
            failures.append(f"x={x}: pooled y-count {py.bit_count()} < {gamma_h}")
        if not (dominates(h, pz) and pz.bit_count() >= gamma_h):
            failures.append(f"x={x}: pooled z-count {pz.bit_count()} < {gamma_h}")
        if inst.col_size(x) + inst.col_size(y) + inst.col_size(z) < 2 * gamma_h:
            failures.append(f"x={x}: |(H_x u H_y u H_z) cap D| < 2 gamma(H)")
    if len(set(ymap.values())) != len(ymap):
        failures.append("x -> y_x not injective")
    if len(set(zmap.values())) != len(zmap):
        failures.append("x -> z_x not injective")
    run.check("y-z-injections", "main/claim-y_x-z_x", not failures, "; ".join(failures),
              y={str(k): v for k, v in ymap.items()}, z={str(k): v for k, v in zmap.items()})

    Q = sum(1 << v for v in (*ymap.values(), *zmap.values()))
    ok = Q & (B[1] | B[2]) == 0 and Q.bit_count() == 2 * BB.bit_count()
    run.check("set-Q", "main/Q-disjoint-B1uB2", ok, "Q meets B1 u B2 or |Q| != 2|B1 ^ B2|", Q=_enc(Q))

    # Observation 0
    a_side, b_side = B[1] & ~S2, B[2] & ~S1
    pairs, failures = [], []
    for a in bits(a_side):
        for b in bits(priv[1][a] & b_side):
            pairs.append([a, b])
            if not priv[2][b] >> a & 1:
                failures.append(f"{a} is not a private neighbour of {b}")
            if g.adj[a] & only[2] != 1 << b:
                failures.append(f"{b} is not the only S2-S1 neighbour of {a}")
            if g.adj[b] & only[1] != 1 << a:
                failures.append(f"{a} is not the only S1-S2 neighbour of {b}")
    run.check("observation-0", "main/observation-0", not failures, "; ".join(failures), pairs=pairs)

    # matching M
    edges, failures, umap, wmap = [], [], {}, {}
    for x in bits(a_side):
        uc = priv[1][x] & only[2]
        if not uc:
            failures.append(f"x={x} in B1-S2 has no private neighbour in S2-S1")
            continue
        u = _low(uc)
        umap[x] = u
        if (Q >> u | Q >> x) & 1:
            failures.append(f"edge {x}-{u} touches Q")
        if T1 & ~vcols[u] & ~cols[x]:
            failures.append(f"(u_{x}, h) for h in T1 neither vertically dominated nor covered by (x, h)")
        if B[2] >> u & 1:
            if not priv[2][u] >> x & 1:
                failures.append(f"{x} is not a private neighbour of u_{x}={u}")
            if T2 & ~vcols[x] & ~cols[u]:
                failures.append(f"(x, h) for h in T2 neither vertically dominated nor covered by (u_{x}, h)")
        elif not inst.vdom_on(u, T2):
            failures.append(f"{{u_{x}}} x T2 not vertically dominated")
        edges.append((x, u, run.pooled(x, T1, u, T2)))
    R = b_side & ~sum(1 << u for u in umap.values())
    for xr in bits(R):
        if priv[2][xr] & a_side:
            failures.append(f"{xr} in R has a private neighbour in B1-S2")
        wc = priv[2][xr] & only[1]
        if not wc:
            failures.append(f"{xr} in R has no private neighbour in S1-S2")
            continue
        w = _low(wc)
        wmap[xr] = w
        if (Q >> w | Q >> xr) & 1:
            failures.append(f"edge {xr}-{w} touches Q")
        if not (A[1] | C[1]) >> w & 1:
            failures.append(f"w_{xr}={w} not in A1 u C1")
        if not inst.vdom_on(w, T1):
            failures.append(f"{{w_{xr}}} x T1 not vertically dominated")
        if T2 & ~vcols[w] & ~cols[xr]:
            failures.append(f"(w_{xr}, h) for h in T2 neither vertically dominated nor covered by ({xr}, h)")
        edges.append((xr, w, run.pooled(xr, T2, w, T1)))
    ends = [v for a, b, _ in edges for v in (a, b)]
    m_prime = sum(1 << v for v in ends)
    saturate = a_side | b_side
    for a, b, pooled in edges:
        if not g.has_edge(a, b):
            failures.append(f"{a}-{b} is not an edge of G")
        if not dominates(h, pooled) or pooled.bit_count() < gamma_h:
            failures.append(f"edge {a}-{b}: pooled count {pooled.bit_count()} < {gamma_h}")
        if inst.col_size(a) + inst.col_size(b) < gamma_h:
            failures.append(f"edge {a}-{b}: |(H_a u H_b) cap D| < {gamma_h}")
        if not (saturate >> a & 1 or saturate >> b & 1):
            failures.append(f"edge {a}-{b} has no endpoint in (B1-S2) u (B2-S1)")
    if len(set(ends)) != len(ends):
        failures.append("M is not a matching")
    if saturate & ~m_prime:
        failures.append(f"unsaturated: {_enc(saturate & ~m_prime)}")
    if m_prime & Q:
        failures.append("M touches Q")
    if (m_prime & only[1]).bit_count() != len(edges) or (m_prime & only[2]).bit_count() != len(edges):
        failures.append("M' is not split evenly between S1-S2 and S2-S1")
    run.check("matching-M", "main/matching-i-iv", not failures, "; ".join(failures),
              M=[[a, b] for a, b, _ in edges], R=_enc(R), u={str(k): v for k, v in umap.items()},
              w={str(k): v for k, v in wmap.items()})

    # leftover pairing
    left1 = S1 & ~(S2 | Q | m_prime)
    left2 = S2 & ~(S1 | Q | m_prime)
    l1, l2 = list(bits(left1)), list(bits(left2))
    failures = []
    if len(l1) > len(l2):
        failures.append(f"|L1| = {len(l1)} > |L2| = {len(l2)}")
    if left1 & B[1] or left2 & B[2]:
        failures.append("leftover vertex lies in B1 or B2")
    for x in l1:
        if not inst.vdom_on(x, T1):
            failures.append(f"{{{x}}} x T1 not vertically dominated")
    for x in l2:
        if not inst.vdom_on(x, T2):
            failures.append(f"{{{x}}} x T2 not vertically dominated")
    pairs = list(zip(l1, l2))
    for a, b in pairs:
        pooled = run.pooled(a, T1, b, T2)
        if not dominates(h, pooled) or inst.col_size(a) + inst.col_size(b) < gamma_h:
            failures.append(f"pair {a},{b}: pooled count {pooled.bit_count()} < {gamma_h}")
    if len(l1) != only[1].bit_count() - BB.bit_count() - len(edges):
        failures.append("|L1| != |S1 - S2| - |B1 ^ B2| - |M|")
    run.check("leftover-pairs", "main/leftover-pairing", not failures, "; ".join(failures),
              L1=l1, L2=l2, pairs=[list(pr) for pr in pairs])

    # final count
    groups = [([x], 1) for x in bits(cap)]
    groups += [([x, ymap[x], zmap[x]], 2) for x in bits(BB)]
    groups += [([a, b], 1) for a, b, _ in edges]
    groups += [([a, b], 1) for a, b in pairs]
    used = [v for vs, _ in groups for v in vs]
    failures = []
    if len(set(used)) != len(used):
        failures.append("column groups overlap")
    total = 0
    for vs, weight in groups:
        got = sum(inst.col_size(v) for v in vs)
        total += got
        if got < weight * gamma_h:
            failures.append(f"group {vs}: {got} < {weight * gamma_h}")
    n1 = Q.bit_count() + len(edges) + cap.bit_count() + len(l1)
    if Q.bit_count() != 2 * BB.bit_count():
        failures.append("|Q| != 2|B1 ^ B2|")
    if n1 != S1.bit_count():
        failures.append(f"|Q| + |M| + |cap| + |L1| = {n1} != |S1| = {S1.bit_count()}")
    lhs, rhs = len(inst.d), inst.gamma_g * gamma_h
    if not lhs >= total >= n1 * gamma_h >= rhs:
        failures.append(f"{lhs} >= {total} >= {n1 * gamma_h} >= {rhs} fails")
    run.check("final-count", "main/|D|>=|S1|gamma(H)", not failures, "; ".join(failures),
              d_size=lhs, group_total=total, Q=Q.bit_count(), M=len(edges), cap=cap.bit_count(),
              L1=len(l1), s1_size=S1.bit_count(), gamma_g=inst.gamma_g, gamma_h=gamma_h)
    run.report.bound_lhs, run.report.bound_rhs = lhs, rhs
    run.report.final_verdict = "pass"


def _check_cap_case(inst: _Instance, x: int, c1: str, c2: str, T, S, priv, only) -> str:
    """The per-case argument for a column of ``S1 ^ S2`` outside ``B1 ^ B2``; returns an error or ''."""
    cols, vcols, h = inst.cols, inst.vcols, inst.h
    cl = {1: c1, 2: c2}
    if c1 == "A" and c2 == "A":
        if (T[1] | T[2]) & ~cols[x]:
            return "H_x not inside D"
        return ""
    if c1 == "C" and c2 == "C":
        if not (inst.vdom_on(x, T[1]) and inst.vdom_on(x, T[2])):
            return "{x} x T_i not vertically dominated"
        return ""
    i = 1 if cl[1] == "A" else 2 if cl[2] == "A" else None
    if i is not None:
        j = 3 - i
        if T[i] & ~cols[x]:
            return f"{{x}} x T{i} not inside D"
        if cl[j] == "C":
            return "" if inst.vdom_on(x, T[j]) else f"{{x}} x T{j} not vertically dominated"
        # x in A_i and B_j: a private neighbour y of x (wrt S_j) sits in S_i - S_j
        yc = priv[j][x] & only[i]
        if not yc:
            return f"no private neighbour of x in S{i}-S{j}"
        y = _low(yc)
        for hv in bits(T[j]):
            if not (h.closed[hv] & T[i] & cols[y] or cols[x] >> hv & 1):
                return f"({y}, {hv}) not dominated by {{y}} x T{i} or by (x, {hv})"
            if not cols[x] >> hv & 1 and not h.adj[hv] & T[i]:
                return f"(x, {hv}) outside D with no T{i} neighbour"
        return ""
    # remaining cases: x in B_i and C_j
    i = 1 if cl[1] == "B" else 2
    j = 3 - i
    yc = priv[i][x] & only[j]
    if not yc:
        return f"no private neighbour of x in S{j}-S{i}"
    y = _low(yc)
    if T[j] & ~cols[x]:
        return f"{{x}} x T{j} not inside D"
    for hv in bits(T[i]):
        if not h.adj[hv] & T[j]:
            if vcols[y] >> hv & 1:
                return f"({y}, {hv}) vertically dominated despite no T{j} neighbour"
            if not cols[x] >> hv & 1:
                return f"(x, {hv}) must be in D"
    return ""
