"""Undirected multigraphs and the spanning-tree primitives built on them.

Edges are identified by their position in ``Graph.edges``; every per-edge
vector in the package is indexed the same way.  Parallel edges are distinct
edges, self-loops are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for invalid graph input."""


class ParseError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DirectedGraphError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class CapExceededError(RuntimeError):
    """Raised when a brute-force routine would exceed its configured cap."""


class DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _components(n: int, edges: Iterable[tuple[int, int]]) -> int:
    dsu = DisjointSet(n)
    count = n
    for u, v in edges:
        if dsu.union(u, v):
            count -= 1
    return count


@dataclass(frozen=True)
class Graph:
    """Connected undirected multigraph on vertices ``0..vertex_count-1``.

    ``labels`` optionally records the original vertex label of each vertex
    when the graph was read from a file with non-contiguous labels.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        n = self.vertex_count
        if n < 2 or not self.edges:
            raise EmptyGraphError("graph needs at least two vertices and one edge")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {i} = ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise SelfLoopError(f"edge {i} is a self-loop at vertex {u}")
        if _components(n, self.edges) != 1:
            raise DisconnectedGraphError("graph is not connected")
        if self.labels is not None and len(self.labels) != n:
            raise GraphError("labels must name every vertex")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def tree_size(self) -> int:
        return self.vertex_count - 1

    def is_spanning_tree(self, edge_ids: Iterable[int]) -> bool:
        ids = list(edge_ids)
        if len(ids) != self.tree_size or len(set(ids)) != len(ids):
            return False
        if any(not 0 <= e < self.edge_count for e in ids):
            return False
        return _components(self.vertex_count, (self.edges[e] for e in ids)) == 1


@dataclass(frozen=True, order=True)
class SpanningTree:
    """A spanning tree, stored as its sorted edge ids."""

    edge_ids: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edge_ids", tuple(sorted(self.edge_ids)))

    def __contains__(self, e: int) -> bool:
        return e in self.edge_ids

    def __iter__(self):
        return iter(self.edge_ids)

    def __len__(self) -> int:
        return len(self.edge_ids)

    def length(self, rho: Sequence) -> float:
        """Sum of ``rho`` over the tree's edges."""
        return sum(rho[e] for e in self.edge_ids)


def make_tree(g: Graph, edge_ids: Iterable[int]) -> SpanningTree:
    ids = tuple(edge_ids)
    if not g.is_spanning_tree(ids):
        raise GraphError(f"edges {sorted(ids)} do not form a spanning tree")
    return SpanningTree(ids)


# ---------------------------------------------------------------- parsing


def parse_graph(text: str) -> Graph:
    """Read the whitespace-separated edge-list format.

    Lines starting with ``#`` and blank lines are skipped.  Vertex labels are
    renumbered in order of first appearance; ``Graph.labels`` keeps the map.
    """
    label_ids: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" in line or "<-" in line:
            raise DirectedGraphError(f"line {lineno}: directed edges are not supported: {raw!r}")
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two vertex labels, got {len(tokens)} tokens")
        try:
            a, b = (int(t, 10) for t in tokens)
        except ValueError:
            raise ParseError(f"line {lineno}: malformed vertex label in {raw!r}") from None
        if a < 0 or b < 0 or any(t.startswith(("+", "-")) for t in tokens):
            raise ParseError(f"line {lineno}: vertex labels must be nonnegative integers")
        if a == b:
            raise SelfLoopError(f"line {lineno}: self-loop at vertex {a}")
        for lab in (a, b):
            label_ids.setdefault(lab, len(label_ids))
        edges.append((label_ids[a], label_ids[b]))
    if not edges:
        raise EmptyGraphError("edge list contains no edges")
    n = len(label_ids)
    if _components(n, edges) != 1:
        raise DisconnectedGraphError(f"graph with {n} vertices and {len(edges)} edges is disconnected")
    return Graph(n, tuple(edges), labels=tuple(label_ids))


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


# ---------------------------------------------------------------- counting


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _tree_count(n: int, edges: Iterable[tuple[int, int]]) -> int:
    lap = [[0] * n for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return _bareiss_det([row[1:] for row in lap[1:]])


def count_spanning_trees(g: Graph) -> int:
    """Number of spanning trees by the matrix-tree theorem, exactly."""
    return _tree_count(g.vertex_count, g.edges)


def count_trees_containing(g: Graph, e: int) -> int:
    """Number of spanning trees through edge ``e`` (trees of ``g`` with ``e`` contracted)."""
    a, b = g.edges[e]
    relabel = [i if i < b else i - 1 for i in range(g.vertex_count)]
    relabel[b] = relabel[a]
    contracted = ((relabel[u], relabel[v]) for i, (u, v) in enumerate(g.edges) if i != e)
    return _tree_count(g.vertex_count - 1, contracted)


def enumerate_spanning_trees(g: Graph, cap: int = 10_000) -> list[SpanningTree]:
    """All spanning trees of ``g``, sorted lexicographically by edge ids.

    Branches on each edge in id order (take it, or delete it while the rest
    can still span), so the cost is proportional to the number of trees.
    """
    total = count_spanning_trees(g)
    if total > cap:
        raise CapExceededError(f"graph has {total} spanning trees, cap is {cap}")
    n, m = g.vertex_count, g.edge_count
    out: list[SpanningTree] = []
    chosen: list[int] = []

    def spans(taken: list[int], start: int) -> bool:
        pool = [g.edges[e] for e in taken] + list(g.edges[start:])
        return _components(n, pool) == 1

    def recurse(i: int, dsu: DisjointSet):
        if len(chosen) == n - 1:
            out.append(SpanningTree(tuple(chosen)))
            return
        if i == m:
            return
        u, v = g.edges[i]
        if dsu.find(u) != dsu.find(v):
            branch = DisjointSet(n)
            branch.parent, branch.size = dsu.parent[:], dsu.size[:]
            branch.union(u, v)
            chosen.append(i)
            recurse(i + 1, branch)
            chosen.pop()
        if spans(chosen, i + 1):
            recurse(i + 1, dsu)

    recurse(0, DisjointSet(n))
    out.sort()
    assert len(out) == total, (len(out), total)
    return out


# ---------------------------------------------------------------- trees & cuts


def min_spanning_tree(g: Graph, rho: Sequence) -> tuple[SpanningTree, float]:
    """Kruskal's algorithm; ties go to the lower edge id.

    ``rho`` may hold floats or exact ``Fraction`` values; the returned length
    has the same type as the sum of its entries.
    """
    if len(rho) != g.edge_count:
        raise ValueError(f"density has length {len(rho)}, graph has {g.edge_count} edges")
    order = sorted(range(g.edge_count), key=lambda e: (rho[e], e))
    dsu = DisjointSet(g.vertex_count)
    picked: list[int] = []
    for e in order:
        u, v = g.edges[e]
        if dsu.union(u, v):
            picked.append(e)
            if len(picked) == g.tree_size:
                break
    tree = SpanningTree(tuple(picked))
    return tree, tree.length(rho)


def find_bridges(g: Graph) -> set[int]:
    """Edge ids whose removal disconnects ``g`` (iterative Tarjan low-link)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for i, (u, v) in enumerate(g.edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    bridges: set[int] = set()
    clock = 0
    disc[0] = low[0] = clock
    # frames: (vertex, edge id used to enter it, neighbour iterator)
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        v, via, it = stack[-1]
        for w, eid in it:
            if eid == via:
                continue
            if disc[w] == -1:
                clock += 1
                disc[w] = low[w] = clock
                stack.append((w, eid, iter(adj[w])))
                break
            low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.add(via)
    return bridges


def components_without(g: Graph, removed: Iterable[int]) -> list[list[int]]:
    """Vertex sets of the connected components of ``g`` minus the given edges.

    Components are sorted internally and ordered by smallest vertex.
    """
    gone = set(removed)
    dsu = DisjointSet(g.vertex_count)
    for i, (u, v) in enumerate(g.edges):
        if i not in gone:
            dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for x in range(g.vertex_count):
        groups.setdefault(dsu.find(x), []).append(x)
    return sorted(groups.values())


def induces_connected(g: Graph, vertices: Iterable[int]) -> bool:
    vs = sorted(set(vertices))
    if not vs:
        return False
    index = {v: i for i, v in enumerate(vs)}
    inner = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return _components(len(vs), inner) == 1
