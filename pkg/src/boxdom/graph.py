"""Graphs, vertex sets, graph6 I/O and Cartesian products.

Vertex sets and adjacency rows are stored as Python ints used as bitmasks:
bit ``v`` is set when vertex ``v`` is a member.  Product vertex ``(g, h)``
has index ``g + h * n_G``, so every G-layer is a contiguous block of bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import IndexOutOfRange, MalformedGraph6, Oversize, UniverseMismatch

FACTOR_CAP = 64
PRODUCT_CAP = 4096
GRAPH6_HEADER = ">>graph6<<"


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


@dataclass(frozen=True)
class VertexSet:
    """A set of vertex indices drawn from ``range(universe)``."""

    universe: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe:
            raise IndexOutOfRange(f"members outside universe of size {self.universe}")

    @classmethod
    def of(cls, universe: int, members: Iterable[int] = ()) -> "VertexSet":
        mask = 0
        for v in members:
            if not 0 <= v < universe:
                raise IndexOutOfRange(f"vertex {v} outside universe of size {universe}")
            mask |= 1 << v
        return cls(universe, mask)

    @classmethod
    def full(cls, universe: int) -> "VertexSet":
        return cls(universe, (1 << universe) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return lex_key(self.mask)

    def __iter__(self):
        return bits(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, v):
        return 0 <= v < self.universe and bool(self.mask >> v & 1)

    def _check(self, other: "VertexSet"):
        if other.universe != self.universe:
            raise UniverseMismatch(f"universes {self.universe} and {other.universe} differ")

    def __or__(self, other):
        self._check(other)
        return VertexSet(self.universe, self.mask | other.mask)

    def __and__(self, other):
        self._check(other)
        return VertexSet(self.universe, self.mask & other.mask)

    def __sub__(self, other):
        self._check(other)
        return VertexSet(self.universe, self.mask & ~other.mask)

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def add(self, v: int) -> "VertexSet":
        return VertexSet.of(self.universe, (*self.members, v))

    def remove(self, v: int) -> "VertexSet":
        return VertexSet(self.universe, self.mask & ~(1 << v))

    def __repr__(self):
        return f"VertexSet({self.universe}, {set(self.members) or '{}'})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``; ``adj[v]`` is the open neighbourhood mask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        for v, row in enumerate(self.adj):
            if row >> self.n or row < 0:
                raise IndexOutOfRange(f"neighbour of {v} outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @cached_property
    def closed(self) -> tuple[int, ...]:
        return tuple(row | 1 << v for v, row in enumerate(self.adj))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> VertexSet:
        self._check_vertex(v)
        return VertexSet(self.n, self.adj[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    g._check_vertex(v)
    return VertexSet(g.n, g.closed[v])


# --- graph6 -----------------------------------------------------------------


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise MalformedGraph6("empty graph6 word")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedGraph6("truncated 8-byte size field")
        n = 0
        for b in data[2:8]:
            n = n << 6 | (b - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedGraph6("truncated 4-byte size field")
    n = 0
    for b in data[1:4]:
        n = n << 6 | (b - 63)
    return n, 4


def parse_graph6(text: str | bytes, max_n: int = FACTOR_CAP) -> Graph:
    """Decode one graph6 word (an optional ``>>graph6<<`` header is accepted)."""
    if isinstance(text, str):
        try:
            data = text.strip().encode("ascii")
        except UnicodeEncodeError:
            raise MalformedGraph6(f"non-ASCII characters in {text!r}") from None
    else:
        data = bytes(text).strip()
    if data.startswith(GRAPH6_HEADER.encode()):
        data = data[len(GRAPH6_HEADER):]
    bad = [b for b in data if not 63 <= b <= 126]
    if bad:
        raise MalformedGraph6(f"byte {bad[0]} outside 63..126 in {data!r}")
    n, offset = _decode_size(data)
    if n > max_n:
        raise Oversize(f"graph6 word encodes n={n} > {max_n}")
    nbits = n * (n - 1) // 2
    body = data[offset:]
    if len(body) != (nbits + 5) // 6:
        raise MalformedGraph6(f"expected {(nbits + 5) // 6} edge bytes for n={n}, got {len(body)}")
    value = 0
    for b in body:
        value = value << 6 | (b - 63)
    pad = len(body) * 6 - nbits
    if value & ((1 << pad) - 1):
        raise MalformedGraph6("nonzero padding bits")
    value >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    word = []
    for j in range(1, n):
        row = g.adj[j]
        word.extend(row >> i & 1 for i in range(j))
    word.extend([0] * (-len(word) % 6))
    for k in range(0, len(word), 6):
        chunk = word[k:k + 6]
        out.append(63 + sum(bit << (5 - t) for t, bit in enumerate(chunk)))
    return bytes(out).decode("ascii")


def read_graph6_lines(lines: Iterable[str], max_n: int = FACTOR_CAP) -> list[Graph]:
    graphs = []
    for line in lines:
        line = line.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if line:
            graphs.append(parse_graph6(line, max_n=max_n))
    return graphs


# --- small families ---------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


# --- Cartesian product ------------------------------------------------------


@dataclass(frozen=True)
class ProductGraph:
    graph: Graph
    g: Graph
    h: Graph

    @property
    def n_g(self) -> int:
        return self.g.n

    @property
    def n_h(self) -> int:
        return self.h.n

    @property
    def n(self) -> int:
        return self.graph.n

    def index(self, gv: int, hv: int) -> int:
        if not (0 <= gv < self.g.n and 0 <= hv < self.h.n):
            raise IndexOutOfRange(f"({gv}, {hv}) outside {self.g.n}x{self.h.n}")
        return gv + hv * self.g.n

    def coords(self, v: int) -> tuple[int, int]:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"product vertex {v} outside 0..{self.n - 1}")
        return v % self.g.n, v // self.g.n

    @cached_property
    def g_layer_masks(self) -> tuple[int, ...]:
        block = self.g.full_mask
        return tuple(block << (hv * self.g.n) for hv in range(self.h.n))

    @cached_property
    def h_layer_masks(self) -> tuple[int, ...]:
        col = sum(1 << (hv * self.g.n) for hv in range(self.h.n))
        return tuple(col << gv for gv in range(self.g.n))

    @cached_property
    def vertical_closed(self) -> tuple[int, ...]:
        """Mask of ``(g, h')`` with ``h'`` in ``N_H[h]``, for each product vertex ``(g, h)``."""
        ng = self.g.n
        return tuple(
            spread(self.h.closed[v // ng], ng) << (v % ng) for v in range(self.n)
        )

    @cached_property
    def horizontal_closed(self) -> tuple[int, ...]:
        ng = self.g.n
        return tuple(self.g.closed[v % ng] << (v // ng * ng) for v in range(self.n))

    def set_of(self, pairs: Iterable[tuple[int, int]]) -> VertexSet:
        return VertexSet.of(self.n, (self.index(a, b) for a, b in pairs))

    def pairs_of(self, s: VertexSet) -> list[tuple[int, int]]:
        return [self.coords(v) for v in s]


def spread(h_mask: int, stride: int) -> int:
    """Map an H-vertex mask to the column mask of g=0 in the product."""
    out = 0
    for hv in bits(h_mask):
        out |= 1 << (hv * stride)
    return out


def cartesian_product(g: Graph, h: Graph, max_n: int = PRODUCT_CAP) -> ProductGraph:
    ng, nh = g.n, h.n
    if ng * nh > max_n:
        raise Oversize(f"product order {ng * nh} exceeds cap {max_n}")
    adj = []
    for hv in range(nh):
        base = hv * ng
        h_row = spread(h.adj[hv], ng)
        for gv in range(ng):
            adj.append(g.adj[gv] << base | h_row << gv)
    return ProductGraph(Graph(ng * nh, tuple(adj)), g, h)


def _check_product_set(p: ProductGraph, s: VertexSet):
    if s.universe != p.n:
        raise UniverseMismatch(f"set over {s.universe} vertices, product has {p.n}")


def layer_g(p: ProductGraph, hv: int) -> VertexSet:
    """The G-layer at ``hv``: all ``(g, hv)``."""
    if not 0 <= hv < p.n_h:
        raise IndexOutOfRange(f"H-vertex {hv} outside 0..{p.n_h - 1}")
    return VertexSet(p.n, p.g_layer_masks[hv])


def layer_h(p: ProductGraph, gv: int) -> VertexSet:
    """The H-layer at ``gv``: all ``(gv, h)``."""
    if not 0 <= gv < p.n_g:
        raise IndexOutOfRange(f"G-vertex {gv} outside 0..{p.n_g - 1}")
    return VertexSet(p.n, p.h_layer_masks[gv])


def project_g(p: ProductGraph, s: VertexSet) -> VertexSet:
    _check_product_set(p, s)
    return VertexSet(p.n_g, project_g_mask(p, s.mask))


def project_g_mask(p: ProductGraph, mask: int) -> int:
    ng, full = p.n_g, p.g.full_mask
    out = 0
    while mask:
        out |= mask & full
        mask >>= ng
    return out


def project_h_mask(p: ProductGraph, mask: int) -> int:
    ng = p.n_g
    out = 0
    for hv in range(p.n_h):
        if mask >> (hv * ng) & p.g.full_mask:
            out |= 1 << hv
    return out


def column_layers(p: ProductGraph, mask: int, gv: int) -> int:
    """H-vertices ``h`` with ``(gv, h)`` in ``mask``."""
    ng = p.n_g
    out = 0
    for hv in range(p.n_h):
        if mask >> (gv + hv * ng) & 1:
            out |= 1 << hv
    return out

