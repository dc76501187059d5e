"""Which covering hypotheses a dominating set of G x H satisfies.

For a dominating set D, ``X_h`` is the projection to G of ``D`` restricted
to the G-layer at ``h``.  A family ``S_1..S_k`` of dominating sets of G is a
k-cover when every layer ``h`` has some ``S_i`` in ``M_G(X_h)``; a minimum
cover uses minimum dominating sets and asks only ``X_h <= S_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .domination import (
    ENUMERATION_CAP,
    dominates,
    is_minimal_containing_mask,
    minimal_extensions,
    minimum_dominating_masks,
)
from .errors import InvariantViolation, NotDominating, Oversize, UniverseMismatch
from .graph import Graph, ProductGraph, VertexSet, lex_key

DEFAULT_KS = (1, 2, 3)


@dataclass(frozen=True)
class LayerProjections:
    n_g: int
    masks: tuple[int, ...]

    @property
    def n_h(self) -> int:
        return len(self.masks)

    @property
    def sets(self) -> tuple[VertexSet, ...]:
        return tuple(VertexSet(self.n_g, m) for m in self.masks)

    def __getitem__(self, hv: int) -> VertexSet:
        return VertexSet(self.n_g, self.masks[hv])


def layer_projections(p: ProductGraph, d: VertexSet) -> LayerProjections:
    if d.universe != p.n:
        raise UniverseMismatch(f"set over {d.universe} vertices, product has {p.n}")
    ng, full = p.n_g, p.g.full_mask
    return LayerProjections(ng, tuple(d.mask >> (hv * ng) & full for hv in range(p.n_h)))


def _check_proj(g: Graph, proj: LayerProjections):
    if proj.n_g != g.n:
        raise UniverseMismatch(f"projections over {proj.n_g} vertices, graph has {g.n}")


def admissible_mask(g: Graph, s_mask: int, proj: LayerProjections) -> int:
    out = 0
    for hv, x in enumerate(proj.masks):
        if is_minimal_containing_mask(g, s_mask, x):
            out |= 1 << hv
    return out


def layers_admissible_for(g: Graph, s: VertexSet, proj: LayerProjections) -> frozenset[int]:
    """Layers ``h`` with ``s`` in ``M_G(X_h)``."""
    _check_proj(g, proj)
    if not dominates(g, s.mask):
        raise NotDominating(f"{s} does not dominate G")
    mask = admissible_mask(g, s.mask, proj)
    return frozenset(lex_key(mask))


def _exact_cover(layer_masks: Sequence[int], n_layers: int, k: int) -> tuple[int, ...] | None:
    """Smallest list of candidate indices (at most ``k``) whose layer masks cover every layer.

    Sizes are tried in increasing order; within a size the search always
    branches on the lowest uncovered layer, trying candidates in their given
    order, so the first hit is deterministic.
    """
    full = (1 << n_layers) - 1
    if full == 0:
        return ()
    by_layer = [[i for i, m in enumerate(layer_masks) if m >> hv & 1] for hv in range(n_layers)]

    def search(covered: int, depth: int, chosen: list[int]):
        if covered == full:
            return tuple(chosen)
        if depth == 0:
            return None
        low = ~covered & full
        hv = (low & -low).bit_length() - 1
        for i in by_layer[hv]:
            chosen.append(i)
            hit = search(covered | layer_masks[i], depth - 1, chosen)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    for r in range(1, min(k, n_layers) + 1):
        hit = search(0, r, [])
        if hit is not None:
            return hit
    return None


def _pad(sets: list[VertexSet], k: int) -> list[VertexSet]:
    return sets + [sets[-1]] * (k - len(sets)) if sets else sets


def cover_candidates(g: Graph, proj: LayerProjections) -> tuple[list[int], list[int]]:
    """Union of ``M_G(X_h)`` over distinct ``X_h`` (lexicographic) and each one's admissible layers."""
    if g.n > ENUMERATION_CAP:
        raise Oversize(f"cover search supports n <= {ENUMERATION_CAP}, got {g.n}")
    _check_proj(g, proj)
    cands = set()
    for x in set(proj.masks):
        cands.update(minimal_extensions(g, x))
    ordered = sorted(cands, key=lex_key)
    return ordered, [admissible_mask(g, s, proj) for s in ordered]


def find_k_cover(g: Graph, proj: LayerProjections, k: int) -> list[VertexSet] | None:
    """``k`` dominating sets covering every layer, or ``None``; short covers are padded by repetition."""
    ordered, masks = cover_candidates(g, proj)
    hit = _exact_cover(masks, proj.n_h, k)
    if hit is None:
        return None
    return _pad([VertexSet(g.n, ordered[i]) for i in hit], k)


def proper_two_covers(g: Graph, proj: LayerProjections, limit: int | None = None) -> list[tuple[VertexSet, VertexSet]]:
    """Pairs of distinct candidates covering every layer where neither covers alone.

    These are the instances on which both layer classes of the two-set
    replay are nonempty.
    """
    ordered, masks = cover_candidates(g, proj)
    full = (1 << proj.n_h) - 1
    out = []
    for i, j in combinations(range(len(ordered)), 2):
        if masks[i] | masks[j] == full and masks[i] != full and masks[j] != full:
            out.append((VertexSet(g.n, ordered[i]), VertexSet(g.n, ordered[j])))
            if limit is not None and len(out) >= limit:
                break
    return out


def find_minimum_cover(g: Graph, proj: LayerProjections, k: int) -> list[VertexSet] | None:
    """``k`` minimum dominating sets such that every ``X_h`` lies inside one of them."""
    if g.n > ENUMERATION_CAP:
        raise Oversize(f"cover search supports n <= {ENUMERATION_CAP}, got {g.n}")
    _check_proj(g, proj)
    ordered = minimum_dominating_masks(g)
    masks = [sum(1 << hv for hv, x in enumerate(proj.masks) if x & ~s == 0) for s in ordered]
    hit = _exact_cover(masks, proj.n_h, k)
    if hit is None:
        return None
    return _pad([VertexSet(g.n, ordered[i]) for i in hit], k)


def assign_layers(g: Graph, sets: Sequence[VertexSet], proj: LayerProjections) -> list[int]:
    """Per layer, the lowest ``i`` with ``sets[i]`` in ``M_G(X_h)`` (or -1)."""
    out = []
    for x in proj.masks:
        owner = -1
        for i, s in enumerate(sets):
            if is_minimal_containing_mask(g, s.mask, x):
                owner = i
                break
        out.append(owner)
    return out


@dataclass
class HypothesisReport:
    projections: LayerProjections
    theorem1: list[VertexSet] | None
    theorem_main_2sets: list[VertexSet] | None
    corollary2sets: list[VertexSet] | None
    conjecture1: list[VertexSet] | None
    k_cover: dict[int, list[VertexSet] | None] = field(default_factory=dict)
    min_cover_k: int | None = None
    min_minimum_cover_k: int | None = None
    bridge: dict | None = None

    def flags(self) -> dict[str, bool]:
        return {
            "theorem1": self.theorem1 is not None,
            "theorem_main_2sets": self.theorem_main_2sets is not None,
            "corollary2sets": self.corollary2sets is not None,
            "conjecture1": self.conjecture1 is not None,
        }

    def to_dict(self, compact: bool = False) -> dict:
        def enc(sets):
            return None if sets is None else [list(s.members) for s in sets]

        out = {
            **self.flags(),
            "min_cover_k": self.min_cover_k,
            "min_minimum_cover_k": self.min_minimum_cover_k,
            "k_cover": {str(k): v is not None for k, v in sorted(self.k_cover.items())},
        }
        if not compact:
            out["witnesses"] = {
                "theorem1": enc(self.theorem1),
                "theorem_main_2sets": enc(self.theorem_main_2sets),
                "corollary2sets": enc(self.corollary2sets),
                "conjecture1": enc(self.conjecture1),
                "k_cover": {str(k): enc(v) for k, v in sorted(self.k_cover.items())},
            }
            out["projections"] = [list(s.members) for s in self.projections.sets]
            out["bridge"] = self.bridge
        return out


def _bridge(g: Graph, sets: list[VertexSet], proj: LayerProjections) -> dict:
    """Turn a minimum cover into a two-set cover for the minimal-set hypothesis.

    A minimum dominating set containing ``X_h`` is already minimal over any
    subset of itself, so each ``D_i`` is its own shrink; this is checked layer
    by layer rather than assumed.
    """
    owners = []
    for hv, x in enumerate(proj.masks):
        owner = next(i for i, s in enumerate(sets) if x & ~s.mask == 0)
        if not is_minimal_containing_mask(g, sets[owner].mask, x):
            raise InvariantViolation(f"minimum set {sets[owner]} not in M_G(X_{hv})")
        owners.append(owner)
    return {"sets": [list(s.members) for s in sets], "layer_owner": owners}


def classify(p: ProductGraph, d: VertexSet, ks: Sequence[int] = DEFAULT_KS) -> HypothesisReport:
    if d.universe != p.n:
        raise UniverseMismatch(f"set over {d.universe} vertices, product has {p.n}")
    if not dominates(p.graph, d.mask):
        raise NotDominating("D does not dominate the product")
    g, nh = p.g, p.n_h
    proj = layer_projections(p, d)

    ordered, masks = cover_candidates(g, proj)
    min_k = None
    for r in range(1, nh + 1):
        if _exact_cover(masks, nh, r) is not None:
            min_k = r
            break

    def cover(k):
        hit = _exact_cover(masks, nh, k)
        return None if hit is None else _pad([VertexSet(g.n, ordered[i]) for i in hit], k)

    k_cover = {k: cover(k) for k in sorted(set(ks) | {1, 2})}
    t1, t2 = k_cover[1], k_cover[2]

    min_sets = minimum_dominating_masks(g)
    min_masks = [sum(1 << hv for hv, x in enumerate(proj.masks) if x & ~s == 0) for s in min_sets]
    min_min_k = None
    for r in range(1, nh + 1):
        if _exact_cover(min_masks, nh, r) is not None:
            min_min_k = r
            break

    def min_cover(k):
        hit = _exact_cover(min_masks, nh, k)
        return None if hit is None else _pad([VertexSet(g.n, min_sets[i]) for i in hit], k)

    corollary = min_cover(2)
    conj1 = min_cover(nh)

    bridge = None
    if corollary is not None:
        bridge = _bridge(g, corollary, proj)
        if t2 is None:
            raise InvariantViolation("two minimum sets cover the layers but no two-set minimal cover was found")
    if t1 is not None and t2 is None:
        raise InvariantViolation("one-set cover exists but two-set cover does not")

    return HypothesisReport(
        projections=proj,
        theorem1=t1,
        theorem_main_2sets=t2,
        corollary2sets=corollary,
        conjecture1=conj1,
        k_cover={k: v for k, v in k_cover.items() if k in set(ks)},
        min_cover_k=min_k,
        min_minimum_cover_k=min_min_k,
        bridge=bridge,
    )
