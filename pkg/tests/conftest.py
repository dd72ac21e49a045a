import networkx as nx
import pytest

from corpoly.graph_core import Graph, edge_key
from corpoly.rng import SplitMix64


def from_networkx(g) -> Graph:
    labels = {v: "v%d" % (i + 1) for i, v in enumerate(sorted(g.nodes()))}
    return Graph(frozenset(labels.values()),
                 frozenset(edge_key(labels[u], labels[v])
                           for u, v in g.edges()))


def connected_atlas(max_n: int, min_n: int = 1) -> list:
    """Isomorphism representatives of connected graphs with min_n <= n <=
    max_n, from the graph atlas (covers n <= 7)."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        if nx.is_connected(g):
            out.append(from_networkx(g))
    return out


def random_connected_graphs(n: int, count: int, seed: int) -> list:
    """Seeded labelled connected graphs on n vertices: each candidate edge
    kept with probability 1/2, resampled until connected."""
    rng = SplitMix64(seed)
    labels = ["v%d" % (i + 1) for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    out = []
    while len(out) < count:
        edges = frozenset(p for p in pairs if rng.next_u64() & 1)
        g = Graph(frozenset(labels), edges)
        h = nx.Graph()
        h.add_nodes_from(labels)
        h.add_edges_from(edges)
        if nx.is_connected(h):
            out.append(g)
    return out


@pytest.fixture(scope="session")
def atlas5():
    return connected_atlas(5)
