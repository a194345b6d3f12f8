"""Small named graphs used throughout the tests and the bundled data files.

Edge orders are fixed so that per-edge vectors can be compared directly:

* ``paw()``: pendant edge first, then the triangle.
* ``diamond()``: the four cycle edges, then the diagonal (edge 4).  With this
  order the trees {2,3,4}, {0,1,4}, {0,1,2}, {0,1,3} are the four trees of the
  introductory broadcast example, so edges 0 and 1 are the pair an
  eavesdropper targets against the uniform mix of those trees.
* ``house()``: floor, right wall, ceiling, left wall, left roof, right roof.
  ``HOUSE_TOP_EDGES`` are the roof and ceiling.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph

DIAMOND_DIAGONAL = 4
DIAMOND_INTRO_TREES = ((2, 3, 4), (0, 1, 4), (0, 1, 2), (0, 1, 3))
HOUSE_TOP_EDGES = frozenset({2, 4, 5})


def paw() -> Graph:
    return Graph(4, ((2, 3), (0, 1), (1, 2), (0, 2)))


def diamond() -> Graph:
    return Graph(4, ((0, 1), (0, 3), (1, 2), (3, 2), (0, 2)))


def house() -> Graph:
    return Graph(5, ((0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (2, 4)))


def k2() -> Graph:
    return Graph(2, ((0, 1),))


def complete(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + j) for i, j in combinations(range(n), 2)]


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(complete(n)))


def two_k5_bridged(bridges: int = 2) -> Graph:
    """Two copies of K5 joined by ``bridges`` vertex-disjoint edges."""
    edges = complete(5) + complete(5, offset=5)
    edges += [(i, 5 + i) for i in range(bridges)]
    return Graph(10, tuple(edges))


def k5_k6_bridged(bridges: int) -> Graph:
    """K5 on 0..4 and K6 on 5..10, joined by edges (i, 5+i) for i < ``bridges``."""
    if not 1 <= bridges <= 5:
        raise ValueError("between 1 and 5 bridges")
    edges = complete(5) + complete(6, offset=5)
    edges += [(i, 5 + i) for i in range(bridges)]
    return Graph(11, tuple(edges))


def bridge_ids(g: Graph, left: int) -> list[int]:
    """Edge ids joining vertices ``< left`` to vertices ``>= left``."""
    return [i for i, (u, v) in enumerate(g.edges) if (u < left) != (v < left)]


def erdos_renyi(seed: int, n: int, p: float) -> Graph:
    """G(n, p) from ``numpy.random.default_rng(seed)``; raises if disconnected."""
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))
