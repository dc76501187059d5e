"""Bundled small-graph corpora (every graph on 1..7 vertices up to isomorphism)."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .graph import Graph, read_graph6_lines

CORPUS_MAX_N = 7


@lru_cache(maxsize=None)
def _load(name: str) -> tuple[Graph, ...]:
    text = resources.files("boxdom").joinpath("data", name).read_text()
    return tuple(read_graph6_lines(text.splitlines()))


def connected_graphs(max_n: int = CORPUS_MAX_N, min_n: int = 1) -> list[Graph]:
    if max_n > CORPUS_MAX_N:
        raise ValueError(f"bundled corpus stops at n = {CORPUS_MAX_N}")
    return [g for g in _load("connected_n1-7.g6") if min_n <= g.n <= max_n]


def all_graphs(max_n: int = CORPUS_MAX_N, min_n: int = 1) -> list[Graph]:
    if max_n > CORPUS_MAX_N:
        raise ValueError(f"bundled corpus stops at n = {CORPUS_MAX_N}")
    return [g for g in _load("graphs_n1-7.g6") if min_n <= g.n <= max_n]
