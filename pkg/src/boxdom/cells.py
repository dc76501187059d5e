"""Cells, vertical/horizontal domination and the undominated-cell counting bound.

Given a minimum dominating set ``g_1..g_k`` of G and a partition ``pi_1..pi_k``
of V(G) with ``pi_i`` inside ``N[g_i]``, a cell is ``pi_i x {h}``.  For a
dominating set D of G x H, ``n_i`` counts vertically undominated cells in the
column block ``H_i = pi_i x V(H)`` and ``m_h`` those in the layer ``G_h``.
The certificate checks ``|D cap H_i| + n_i >= gamma(H)`` for every ``i`` and
``|D cap G_h| >= m_h`` for every ``h``, which together give
``2|D| >= gamma(G) gamma(H)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .domination import dominates, domination_number
from .errors import InvariantViolation, NotDominating, NotMinimum, UniverseMismatch
from .graph import Graph, ProductGraph, VertexSet, bits, project_h_mask


@dataclass(frozen=True)
class CellPartition:
    graph: Graph
    dominators: tuple[int, ...]
    cells: tuple[VertexSet, ...]

    @property
    def k(self) -> int:
        return len(self.dominators)

    def to_dict(self) -> dict:
        return {"dominators": list(self.dominators), "cells": [list(c.members) for c in self.cells]}


def _check_dominators(g: Graph, dominators: Sequence[int]) -> int:
    if len(set(dominators)) != len(dominators):
        raise ValueError(f"repeated dominator in {list(dominators)}")
    mask = VertexSet.of(g.n, dominators).mask
    if not dominates(g, mask):
        raise NotDominating(f"{sorted(dominators)} does not dominate the graph")
    gamma = domination_number(g)
    if len(dominators) > gamma:
        raise NotMinimum(f"{len(dominators)} dominators given but gamma = {gamma}")
    return mask


def build_cells(g: Graph, dominators: Sequence[int] | VertexSet) -> CellPartition:
    """Assign each vertex to the first ``g_i`` (in the given order) whose closed neighbourhood holds it."""
    dominators = tuple(dominators)
    _check_dominators(g, dominators)
    cells = [0] * len(dominators)
    for v in range(g.n):
        for i, gi in enumerate(dominators):
            if g.closed[gi] >> v & 1:
                cells[i] |= 1 << v
                break
    return CellPartition(g, dominators, tuple(VertexSet(g.n, c) for c in cells))


def cell_partition(g: Graph, dominators: Sequence[int], cells: Iterable[Iterable[int]]) -> CellPartition:
    """Validate a user-supplied partition against ``dominators``."""
    dominators = tuple(dominators)
    _check_dominators(g, dominators)
    cell_sets = tuple(VertexSet.of(g.n, c) for c in cells)
    if len(cell_sets) != len(dominators):
        raise ValueError(f"{len(cell_sets)} cells for {len(dominators)} dominators")
    seen = 0
    for gi, c in zip(dominators, cell_sets):
        if not c.mask:
            raise ValueError(f"empty cell for dominator {gi}")
        if c.mask & ~g.closed[gi]:
            raise ValueError(f"cell {sorted(c.members)} is not inside N[{gi}]")
        if seen & c.mask:
            raise ValueError("cells overlap")
        seen |= c.mask
    if seen != g.full_mask:
        raise ValueError("cells do not cover V(G)")
    return CellPartition(g, dominators, cell_sets)


def _check_set(p: ProductGraph, d: VertexSet):
    if d.universe != p.n:
        raise UniverseMismatch(f"set over {d.universe} vertices, product has {p.n}")


def vertically_dominated(p: ProductGraph, d: VertexSet, v: int) -> bool:
    _check_set(p, d)
    return bool(p.vertical_closed[v] & d.mask)


def horizontally_dominated(p: ProductGraph, d: VertexSet, v: int) -> bool:
    _check_set(p, d)
    return bool(p.horizontal_closed[v] & d.mask)


def vertical_dominated_mask(p: ProductGraph, d_mask: int) -> int:
    """All product vertices vertically dominated by ``d_mask`` (the relation is symmetric)."""
    vc = p.vertical_closed
    out = 0
    for v in bits(d_mask):
        out |= vc[v]
    return out


def horizontal_dominated_mask(p: ProductGraph, d_mask: int) -> int:
    hc = p.horizontal_closed
    out = 0
    for v in bits(d_mask):
        out |= hc[v]
    return out


@dataclass(frozen=True)
class CSCertificate:
    dominators: tuple[int, ...]
    n: tuple[int, ...]
    m: tuple[int, ...]
    column_counts: tuple[int, ...]
    layer_counts: tuple[int, ...]
    undominated_cells: tuple[tuple[int, int], ...]
    d_size: int
    gamma_g: int
    gamma_h: int
    eq1_holds: bool = True
    eq2_holds: bool = True
    half_bound_holds: bool = True
    eq1_tight: bool = False
    eq2_tight: bool = False

    def to_dict(self, compact: bool = False) -> dict:
        if compact:
            return {"dominators": list(self.dominators), "n": list(self.n), "m": list(self.m)}
        out = asdict(self)
        out["undominated_cells"] = [list(c) for c in self.undominated_cells]
        return out


def undominated_cell_counts(p: ProductGraph, d: VertexSet, c: CellPartition) -> CSCertificate:
    _check_set(p, d)
    if not dominates(p.graph, d.mask):
        raise NotDominating("D does not dominate the product")
    if c.graph != p.g:
        raise UniverseMismatch("cell partition is over a different graph than the G factor")
    ng, nh, k = p.n_g, p.n_h, c.k
    vdom = vertical_dominated_mask(p, d.mask)
    n_counts, m_counts, undominated = [0] * k, [0] * nh, []
    for hv in range(nh):
        for i, cell in enumerate(c.cells):
            if not vdom & cell.mask << (hv * ng):
                n_counts[i] += 1
                m_counts[hv] += 1
                undominated.append((i, hv))
    column_counts = tuple(
        sum((d.mask & p.h_layer_masks[gv]).bit_count() for gv in bits(cell.mask)) for cell in c.cells
    )
    layer_counts = tuple((d.mask & p.g_layer_masks[hv]).bit_count() for hv in range(nh))
    return CSCertificate(
        dominators=c.dominators,
        n=tuple(n_counts),
        m=tuple(m_counts),
        column_counts=column_counts,
        layer_counts=layer_counts,
        undominated_cells=tuple(sorted(undominated)),
        d_size=len(d),
        gamma_g=k,
        gamma_h=domination_number(p.h),
    )


def verify_clark_suen(p: ProductGraph, d: VertexSet, c: CellPartition) -> CSCertificate:
    """Certify both counting inequalities and the half bound on one instance.

    Besides the inequalities themselves, the two dominating sets behind them
    are rebuilt and checked: for each ``i`` the H-projection of ``D cap H_i``
    together with the undominated cells' layers dominates H, and for each
    ``h`` the G-projection of ``D cap G_h`` together with the dominators of
    the cells that are not undominated dominates G.  Any failure raises
    :class:`InvariantViolation`.
    """
    cert = undominated_cell_counts(p, d, c)
    ng, nh, k = p.n_g, p.n_h, c.k
    gamma_g, gamma_h = cert.gamma_g, cert.gamma_h
    if gamma_g != domination_number(p.g):
        raise NotMinimum(f"partition has {gamma_g} cells but gamma(G) = {domination_number(p.g)}")

    if sum(cert.n) != sum(cert.m):
        raise InvariantViolation(f"sum n = {sum(cert.n)} but sum m = {sum(cert.m)}")

    und_by_cell = [0] * k
    und_by_layer = [0] * nh
    for i, hv in cert.undominated_cells:
        und_by_cell[i] |= 1 << hv
        und_by_layer[hv] |= 1 << i

    for i, cell in enumerate(c.cells):
        col = 0
        for gv in bits(cell.mask):
            col |= p.h_layer_masks[gv]
        h_proj = project_h_mask(p, d.mask & col)
        if not dominates(p.h, h_proj | und_by_cell[i]):
            raise InvariantViolation(f"column block {i}: projection plus undominated cells misses H")
        if cert.column_counts[i] + cert.n[i] < gamma_h:
            raise InvariantViolation(
                f"column block {i}: |D cap H_i| + n_i = {cert.column_counts[i] + cert.n[i]} < {gamma_h}"
            )

    full_g = p.g.full_mask
    for hv in range(nh):
        x_h = d.mask >> (hv * ng) & full_g
        kept = 0
        for i, gi in enumerate(c.dominators):
            if not und_by_layer[hv] >> i & 1:
                kept |= 1 << gi
        replacement = x_h | kept
        if not dominates(p.g, replacement):
            raise InvariantViolation(f"layer {hv}: projection plus kept dominators misses G")
        if cert.layer_counts[hv] < cert.m[hv]:
            raise InvariantViolation(f"layer {hv}: |D cap G_h| = {cert.layer_counts[hv]} < m_h = {cert.m[hv]}")
        if cert.layer_counts[hv] == cert.m[hv] and replacement.bit_count() != gamma_g:
            raise InvariantViolation(f"layer {hv}: tight layer but replacement set is not minimum")

    size = cert.d_size
    eq1_total = size + sum(cert.n)
    if eq1_total < gamma_g * gamma_h:
        raise InvariantViolation(f"|D| + sum n = {eq1_total} < {gamma_g * gamma_h}")
    if size < sum(cert.m):
        raise InvariantViolation(f"|D| = {size} < sum m = {sum(cert.m)}")
    if 2 * size < gamma_g * gamma_h:
        raise InvariantViolation(f"2|D| = {2 * size} < gamma(G) gamma(H) = {gamma_g * gamma_h}")
    eq1_tight = eq1_total == gamma_g * gamma_h
    eq2_tight = size == sum(cert.m)
    if 2 * size == gamma_g * gamma_h and not (eq1_tight and eq2_tight):
        raise InvariantViolation("half bound attained without both sums tight")
    return CSCertificate(**{**cert.__dict__, "eq1_tight": eq1_tight, "eq2_tight": eq2_tight})
