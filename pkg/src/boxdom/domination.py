"""Domination number, dominating-set predicates, private neighbours and M_G(X).

``M_G(X)`` is the family of dominating sets ``D`` of ``G`` with ``X`` a subset
of ``D`` such that no ``D'`` with ``X <= D' < D`` dominates ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import NotInSet, Oversize, UniverseMismatch
from .graph import FACTOR_CAP, Graph, VertexSet, bits, lex_key

BRUTEFORCE_CAP = 16
ENUMERATION_CAP = 20


@dataclass(frozen=True)
class DominationResult:
    gamma: int
    witness: VertexSet
    nodes_explored: int


def _check_universe(g: Graph, s: VertexSet):
    if s.universe != g.n:
        raise UniverseMismatch(f"set over {s.universe} vertices, graph has {g.n}")


def dominated_mask(g: Graph, mask: int) -> int:
    closed = g.closed
    out = 0
    for v in bits(mask):
        out |= closed[v]
    return out


def dominates(g: Graph, mask: int) -> bool:
    return dominated_mask(g, mask) == g.full_mask


def is_dominating(g: Graph, s: VertexSet) -> bool:
    _check_universe(g, s)
    return dominates(g, s.mask)


def greedy_dominating_mask(g: Graph) -> int:
    """Repeatedly take the vertex covering most undominated vertices (lowest index on ties)."""
    chosen, dominated, full = 0, 0, g.full_mask
    closed = g.closed
    while dominated != full:
        best_v, best_gain = -1, 0
        undominated = full & ~dominated
        for v in range(g.n):
            gain = (closed[v] & undominated).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen |= 1 << best_v
        dominated |= closed[best_v]
    return chosen


def gamma_exact(g: Graph, max_n: int = FACTOR_CAP) -> DominationResult:
    """Exact domination number by branch and bound.

    Branches on the lowest-index undominated vertex ``u``, trying each
    dominator in ``N[u]`` in index order; earlier siblings are forbidden in
    later branches.  A branch is cut when the chosen count plus
    ``ceil(undominated / max coverage)`` cannot beat the incumbent, which is
    seeded with the greedy solution.
    """
    if g.n > max_n:
        raise Oversize(f"gamma_exact supports n <= {max_n}, got {g.n}")
    full, closed, n = g.full_mask, g.closed, g.n
    if n == 0:
        return DominationResult(0, VertexSet(0), 0)

    greedy = greedy_dominating_mask(g)
    best = [greedy.bit_count(), greedy]
    nodes = 0

    def search(chosen: int, dominated: int, forbidden: int, size: int):
        nonlocal nodes
        nodes += 1
        if dominated == full:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        undominated = full & ~dominated
        count = undominated.bit_count()
        cover = 0
        for v in range(n):
            if not forbidden >> v & 1:
                c = (closed[v] & undominated).bit_count()
                if c > cover:
                    cover = c
        if cover == 0:
            return
        if size + -(-count // cover) >= best[0]:
            return
        u = (undominated & -undominated).bit_length() - 1
        local = forbidden
        for c in bits(closed[u] & ~forbidden):
            search(chosen | 1 << c, dominated | closed[c], local, size + 1)
            local |= 1 << c

    search(0, 0, 0, 0)
    return DominationResult(best[0], VertexSet(n, best[1]), nodes)


def gamma_bruteforce(g: Graph) -> int:
    """Smallest dominating subset size, by enumerating subsets in size order."""
    if g.n > BRUTEFORCE_CAP:
        raise Oversize(f"gamma_bruteforce supports n <= {BRUTEFORCE_CAP}, got {g.n}")
    for r in range(g.n + 1):
        for combo in combinations(range(g.n), r):
            if dominates(g, sum(1 << v for v in combo)):
                return r
    raise AssertionError("the full vertex set always dominates")


@lru_cache(maxsize=4096)
def domination_number(g: Graph) -> int:
    return gamma_exact(g, max_n=max(g.n, FACTOR_CAP)).gamma


def private_neighbor_mask(g: Graph, s_mask: int, x: int) -> int:
    adj = g.adj
    out = 0
    for y in bits(adj[x] & ~s_mask):
        if adj[y] & s_mask == 1 << x:
            out |= 1 << y
    return out


def private_neighbors(g: Graph, s: VertexSet, x: int) -> VertexSet:
    """Vertices ``y`` outside ``s`` whose only neighbour in ``s`` is ``x``."""
    _check_universe(g, s)
    if x not in s:
        raise NotInSet(f"vertex {x} is not in {s}")
    return VertexSet(g.n, private_neighbor_mask(g, s.mask, x))


def is_redundant(g: Graph, d_mask: int, v: int) -> bool:
    """Whether ``d - v`` still dominates, given that ``d`` dominates and ``v`` is in ``d``."""
    return private_neighbor_mask(g, d_mask, v) == 0 and g.adj[v] & d_mask != 0


def is_minimal_containing_mask(g: Graph, d_mask: int, x_mask: int) -> bool:
    if x_mask & ~d_mask or not dominates(g, d_mask):
        return False
    return not any(is_redundant(g, d_mask, v) for v in bits(d_mask & ~x_mask))


def is_minimal_dominating_containing(g: Graph, d: VertexSet, x: VertexSet) -> bool:
    """Membership of ``d`` in ``M_G(x)``; ``False`` when ``x`` is not inside ``d``."""
    _check_universe(g, d)
    _check_universe(g, x)
    return is_minimal_containing_mask(g, d.mask, x.mask)


def _has_closed_private(g: Graph, s_mask: int, v: int) -> bool:
    closed = g.closed
    me = 1 << v
    return any(closed[w] & s_mask == me for w in bits(closed[v]))


@lru_cache(maxsize=65536)
def minimal_extensions(g: Graph, x_mask: int) -> tuple[int, ...]:
    """All masks in ``M_G(X)`` as a lexicographically sorted tuple."""
    if g.n > ENUMERATION_CAP:
        raise Oversize(f"M_G(X) enumeration supports n <= {ENUMERATION_CAP}, got {g.n}")
    full, closed = g.full_mask, g.closed
    found = set()

    def extend(s: int, dominated: int):
        if dominated == full:
            found.add(s)
            return
        u = (~dominated & full)
        u = (u & -u).bit_length() - 1
        for c in bits(closed[u]):
            s2 = s | 1 << c
            # a non-X member without a closed private neighbour stays redundant in every superset
            if all(_has_closed_private(g, s2, v) for v in bits(s2 & ~x_mask)):
                extend(s2, dominated | closed[c])

    extend(x_mask, dominated_mask(g, x_mask))
    return tuple(sorted(found, key=lex_key))


def enumerate_m(g: Graph, x: VertexSet, limit: int | None = None) -> list[VertexSet]:
    """Members of ``M_G(x)`` in lexicographic order, truncated at ``limit``."""
    _check_universe(g, x)
    masks = minimal_extensions(g, x.mask)
    if limit is not None:
        masks = masks[:limit]
    return [VertexSet(g.n, m) for m in masks]


@lru_cache(maxsize=4096)
def minimum_dominating_masks(g: Graph, max_n: int = FACTOR_CAP) -> tuple[int, ...]:
    """Every dominating set of size gamma(G), lexicographically sorted, without duplicates.

    Each set is reached exactly once: at the lowest undominated vertex the
    branch is fixed by its first member in ``N[u]``.
    """
    if g.n > max_n:
        raise Oversize(f"minimum dominating set enumeration supports n <= {max_n}, got {g.n}")
    if g.n == 0:
        return (0,)
    gamma = gamma_exact(g, max_n=max_n).gamma
    full, closed, n = g.full_mask, g.closed, g.n
    out = []

    def search(chosen: int, dominated: int, forbidden: int, size: int):
        if dominated == full:
            out.append(chosen)
            return
        if size == gamma:
            return
        undominated = full & ~dominated
        cover = max(
            ((closed[v] & undominated).bit_count() for v in range(n) if not forbidden >> v & 1),
            default=0,
        )
        if cover == 0 or size + -(-undominated.bit_count() // cover) > gamma:
            return
        u = (undominated & -undominated).bit_length() - 1
        local = forbidden
        for c in bits(closed[u] & ~forbidden):
            search(chosen | 1 << c, dominated | closed[c], local, size + 1)
            local |= 1 << c

    search(0, 0, 0, 0)
    return tuple(sorted(out, key=lex_key))


def minimum_dominating_sets(g: Graph, max_n: int = FACTOR_CAP) -> list[VertexSet]:
    return [VertexSet(g.n, m) for m in minimum_dominating_masks(g, max_n)]
