"""Regenerate the bundled graph6 corpora from the networkx graph atlas.

The atlas holds every graph on 0..7 vertices up to isomorphism.
Run from the repository root:  python scripts/make_corpus.py
"""

from pathlib import Path

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

OUT = Path(__file__).resolve().parents[1] / "src" / "boxdom" / "data"


def main():
    graphs = [g for g in graph_atlas_g() if g.number_of_nodes() >= 1]
    connected = [g for g in graphs if nx.is_connected(g)]
    for name, family in (("graphs_n1-7.g6", graphs), ("connected_n1-7.g6", connected)):
        lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in family]
        (OUT / name).write_text("\n".join(lines) + "\n")
        print(name, len(lines))


if __name__ == "__main__":
    main()
