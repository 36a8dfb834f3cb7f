import itertools
import random

import pytest

from fixicity.corpus import default_corpus
from fixicity.graph import Graph, from_edges


def brute_force_aut_count(g: Graph) -> int:
    """Count automorphisms by trying all n! permutations."""
    edges = {frozenset(e) for e in g.edges()}
    count = 0
    for p in itertools.permutations(range(g.n)):
        if all(frozenset((p[u], p[v])) in edges for u, v in g.edges()):
            count += 1
    return count


def random_graph(n: int, prob: float, rng: random.Random) -> Graph:
    return from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < prob])


def to_nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()
