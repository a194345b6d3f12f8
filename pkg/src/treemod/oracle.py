"""Brute-force references for small graphs.

Nothing here calls the modulus solver: the expected-overlap minimum is found
by conditional gradient over the full list of enumerated trees, and the
strength by exhausting vertex partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .game import FeasiblePartition, make_partition
from .graph import CapExceededError, Graph, enumerate_spanning_trees
from .modulus import TreePmf, usage_matrix

DEFAULT_TREE_CAP = 200
DEFAULT_VERTEX_CAP = 10


def oracle_meo(
    g: Graph, cap: int = DEFAULT_TREE_CAP, gap_tol: float = 1e-9, max_iter: int = 200_000
) -> tuple[TreePmf, float]:
    """Minimize ``sum(eta**2)`` over all tree pmfs with pairwise Frank-Wolfe.

    Each step moves mass from the worst tree in the support (largest
    ``eta``-length) to the best tree overall (smallest ``eta``-length), with
    exact line search on the quadratic.  Stops when the Frank-Wolfe gap
    ``2 (|eta|^2 - min_T eta(T))`` drops below ``gap_tol``.
    """
    trees = enumerate_spanning_trees(g, cap)
    n = usage_matrix(trees, g.edge_count)
    t = len(trees)
    mu = np.full(t, 1.0 / t)
    eta = n.T @ mu
    for _ in range(max_iter):
        lengths = n @ eta
        best = int(np.argmin(lengths))
        gap = 2.0 * (eta @ eta - lengths[best])
        if gap < gap_tol:
            break
        active = np.flatnonzero(mu > 0)
        worst = int(active[np.argmax(lengths[active])])
        d = n[best] - n[worst]
        curvature = d @ d
        if curvature == 0:
            break
        step = min(mu[worst], -(eta @ d) / curvature)
        mu[best] += step
        mu[worst] -= step
        if mu[worst] < 1e-15:
            mu[worst] = 0.0
        eta = n.T @ mu
    else:
        raise RuntimeError(f"Frank-Wolfe gap {gap:.3e} after {max_iter} iterations")
    mu /= mu.sum()
    eta = n.T @ mu
    pmf = TreePmf({tree: float(p) for tree, p in zip(trees, mu) if p > 0})
    return pmf, float(eta @ eta)


def oracle_strength(g: Graph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> tuple[Fraction, FeasiblePartition]:
    """Minimum ``|E_Q| / (k - 1)`` over all feasible partitions, exhaustively.

    Partitions are generated block by block (the block holding the smallest
    unassigned vertex first) and a block is only kept if it induces a
    connected subgraph, which is the same as enumerating every set partition
    and discarding the infeasible ones.  Ties go to the smallest ``k``, then
    to the lexicographically smallest list of parts.
    """
    n = g.vertex_count
    if n > vertex_cap:
        raise CapExceededError(f"graph has {n} vertices, cap is {vertex_cap}")
    full = (1 << n) - 1
    adj = [0] * n
    inner = [0] * (1 << n)
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    ends = [(1 << u) | (1 << v) for u, v in g.edges]
    for mask in range(1 << n):
        inner[mask] = sum(1 for b in ends if b & mask == b)
    connected = [False] * (1 << n)
    for mask in range(1, 1 << n):
        seen = mask & -mask
        frontier = seen
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nxt = adj[low.bit_length() - 1] & mask & ~seen
            seen |= nxt
            frontier |= nxt
        connected[mask] = seen == mask

    m = g.edge_count
    best: list = [None]  # (crossing, k - 1, blocks)

    def better(cross: int, km1: int, blocks: tuple) -> bool:
        cur = best[0]
        if cur is None:
            return True
        c0, k0, b0 = cur
        lhs, rhs = cross * k0, c0 * km1
        if lhs != rhs:
            return lhs < rhs
        return (km1, blocks) < (k0, b0)

    def recurse(remaining: int, blocks: list[int], kept_inner: int):
        if not remaining:
            if len(blocks) >= 2:
                parts = tuple(tuple(i for i in range(n) if b >> i & 1) for b in blocks)
                cross, km1 = m - kept_inner, len(blocks) - 1
                if better(cross, km1, parts):
                    best[0] = (cross, km1, parts)
            return
        low = remaining & -remaining
        rest = remaining ^ low
        sub = rest
        while True:
            block = sub | low
            if connected[block]:
                blocks.append(block)
                recurse(remaining ^ block, blocks, kept_inner + inner[block])
                blocks.pop()
            if sub == 0:
                break
            sub = (sub - 1) & rest

    recurse(full, [], 0)
    cross, km1, parts = best[0]
    q = make_partition(g, parts)
    assert q.weight == Fraction(cross, km1)
    return q.weight, q


@dataclass(frozen=True)
class OracleReport:
    meo_value: float
    mod2: float
    strength_exact: Fraction
    min_partition: FeasiblePartition
    tree_count: int
    mu: TreePmf


def oracle_report(g: Graph, tree_cap: int = DEFAULT_TREE_CAP, vertex_cap: int = DEFAULT_VERTEX_CAP) -> OracleReport:
    mu, value = oracle_meo(g, tree_cap)
    w, q = oracle_strength(g, vertex_cap)
    return OracleReport(value, 1.0 / value, w, q, len(enumerate_spanning_trees(g, tree_cap)), mu)
