"""Regenerate the vendored graph6 corpus (all graphs on 0..7 vertices).

Uses the networkx graph atlas, which lists one graph per isomorphism class.
"""
import pathlib

import networkx as nx

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "edgereg" / "corpus"


def main():
    by_n = {}
    for g in nx.graph_atlas_g():
        by_n.setdefault(g.number_of_nodes(), []).append(nx.to_graph6_bytes(g, header=False).decode().strip())
    OUT.mkdir(parents=True, exist_ok=True)
    for n, lines in sorted(by_n.items()):
        (OUT / f"graph{n}.g6").write_text("".join(s + "\n" for s in lines))
        print(n, len(lines))


if __name__ == "__main__":
    main()
