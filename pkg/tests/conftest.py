import json
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from treemod import families
from treemod.graph import Graph

DATA = Path(__file__).parent / "data"
REPO_DATA = Path(__file__).parent.parent / "data"


def named_graphs() -> dict[str, Graph]:
    zoo = {
        "k2": families.k2(),
        "paw": families.paw(),
        "diamond": families.diamond(),
        "house": families.house(),
        "double_edge": Graph(2, ((0, 1), (0, 1))),
        "fig4": families.two_k5_bridged(2),
    }
    for n in range(4, 9):
        zoo[f"K{n}"] = families.complete_graph(n)
    for b in range(1, 6):
        zoo[f"k5k6_{b}"] = families.k5_k6_bridged(b)
    return zoo


ZOO = named_graphs()
SMALL = {k: g for k, g in ZOO.items() if g.vertex_count <= 6}


def er_graphs() -> list[tuple[dict, Graph]]:
    out = []
    for entry in json.loads((DATA / "er_seeds.json").read_text()):
        g = families.erdos_renyi(entry["seed"], entry["n"], entry["p"])
        assert g.edge_count == entry["edges"], "generator drifted from the committed seed list"
        out.append((entry, g))
    return out


def brute_force_trees(g: Graph) -> list[tuple[int, ...]]:
    """Every (|V|-1)-subset of edges that networkx calls a spanning tree."""
    found = []
    for combo in combinations(range(g.edge_count), g.vertex_count - 1):
        h = nx.MultiGraph()
        h.add_nodes_from(range(g.vertex_count))
        h.add_edges_from(g.edges[e] for e in combo)
        if nx.is_connected(h):
            found.append(combo)
    return found


@st.composite
def multigraphs(draw, max_vertices=6, max_extra=5):
    """Connected multigraphs: a random tree plus extra (possibly parallel) edges."""
    n = draw(st.integers(2, max_vertices))
    edges = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges += draw(st.lists(st.sampled_from(pairs), max_size=max_extra))
    order = draw(st.permutations(range(len(edges))))
    return Graph(n, tuple(edges[i] for i in order))


@pytest.fixture(params=sorted(SMALL))
def small_graph(request):
    return SMALL[request.param]
