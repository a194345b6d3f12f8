"""The secure broadcast game: a broadcaster picks a spanning tree, an
eavesdropper picks an edge, and the eavesdropper wins if the edge is in the
tree.  Mixed strategies are a ``TreePmf`` and a per-edge pmf.

A pair ``(u, v)`` is an equilibrium exactly when the shortest tree under
``v`` is at least as long as the largest expected edge usage under ``u``.
The optimal strategies come from the 2-modulus solve: the broadcaster plays
the optimal tree pmf and the eavesdropper plays uniformly on the edges where
expected usage is maximal, which are the crossing edges of a minimum-weight
feasible partition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .graph import (
    Graph,
    GraphError,
    SpanningTree,
    components_without,
    count_spanning_trees,
    count_trees_containing,
    induces_connected,
    min_spanning_tree,
)
from .modulus import (
    DEFAULT_TOL,
    ModulusResult,
    SolverError,
    TreePmf,
    compute_modulus,
    exact_round,
    usage_matrix,
)

log = logging.getLogger(__name__)


class PartitionError(SolverError):
    """The maximal-usage edges do not cut the graph into a feasible partition."""


class EquilibriumError(SolverError):
    """An internally built strategy pair failed its equilibrium certificate."""


class EdgePmf(tuple):
    """Per-edge probability vector (floats or Fractions)."""

    def __new__(cls, probs: Iterable, atol: float = 1e-12):
        self = super().__new__(cls, probs)
        if any(p < 0 for p in self):
            raise ValueError("edge pmf has negative entries")
        if abs(sum(self) - 1) > atol:
            raise ValueError(f"edge pmf sums to {float(sum(self))!r}, not 1")
        return self

    @classmethod
    def uniform_on(cls, edge_ids: Iterable[int], edge_count: int) -> "EdgePmf":
        ids = set(edge_ids)
        p = Fraction(1, len(ids))
        return cls(p if e in ids else Fraction(0) for e in range(edge_count))

    @property
    def support(self) -> list[int]:
        return [e for e, p in enumerate(self) if p > 0]


@dataclass(frozen=True)
class FeasiblePartition:
    parts: tuple[tuple[int, ...], ...]
    edge_set: frozenset[int]
    k: int
    weight: Fraction


def make_partition(g: Graph, parts: Iterable[Iterable[int]]) -> FeasiblePartition:
    """Build and validate a feasible partition from its vertex sets."""
    blocks = sorted(tuple(sorted(p)) for p in parts)
    flat = [v for b in blocks for v in b]
    if sorted(flat) != list(range(g.vertex_count)):
        raise PartitionError("parts do not partition the vertex set")
    if len(blocks) < 2:
        raise PartitionError("a feasible partition needs at least two parts")
    for b in blocks:
        if not induces_connected(g, b):
            raise PartitionError(f"part {b} does not induce a connected subgraph")
    where = {v: i for i, b in enumerate(blocks) for v in b}
    crossing = frozenset(e for e, (u, v) in enumerate(g.edges) if where[u] != where[v])
    k = len(blocks)
    return FeasiblePartition(tuple(blocks), crossing, k, Fraction(len(crossing), k - 1))


def extract_partition(g: Graph, eta_rational: Sequence[Fraction]) -> FeasiblePartition:
    """Feasible partition whose crossing edges are the argmax of exact usage."""
    top = max(eta_rational)
    argmax = {e for e, x in enumerate(eta_rational) if x == top}
    q = make_partition(g, components_without(g, argmax))
    if q.edge_set != argmax:
        inside = sorted(argmax - q.edge_set)
        raise PartitionError(f"maximal-usage edges {inside} lie inside a part; solve or rounding is off")
    if q.weight != 1 / top:
        raise PartitionError(f"partition weight {q.weight} does not match 1 / max usage = {1 / top}")
    return q


@dataclass(frozen=True)
class EquilibriumCheck:
    is_equilibrium: bool
    ell_v_gamma: float | Fraction
    eta_max: float | Fraction
    witness_tree: SpanningTree
    eta: tuple
    support_u_ok: bool
    support_v_ok: bool


def verify_equilibrium(
    g: Graph, u: TreePmf, v: Sequence, tol: float = 1e-9, exact: bool = False
) -> EquilibriumCheck:
    """Check whether ``(u, v)`` solves the broadcast game.

    With ``exact=True`` the usage vector is snapped to small-denominator
    rationals with ``exact_round``, ``v`` is taken as exact fractions, and
    all comparisons are exact (``tol`` still applies, normally 0).
    """
    for tree, _ in u:
        if not g.is_spanning_tree(tree.edge_ids):
            raise GraphError(f"strategy uses {tree.edge_ids}, which is not a spanning tree")
    if len(v) != g.edge_count:
        raise ValueError(f"edge pmf has {len(v)} entries, graph has {g.edge_count} edges")
    eta = u.usage(g.edge_count)
    if exact:
        eta = exact_round(eta, g.edge_count)
        v = [Fraction(p) for p in v]
        tol = Fraction(tol)
    witness, ell = min_spanning_tree(g, v)
    eta_max = max(eta)
    support_u_ok = all(abs(tree.length(v) - ell) <= tol for tree, _ in u)
    support_v_ok = all(eta_max - eta[e] <= tol for e, p in enumerate(v) if p > 0)
    return EquilibriumCheck(
        is_equilibrium=bool(ell >= eta_max - tol),
        ell_v_gamma=ell,
        eta_max=eta_max,
        witness_tree=witness,
        eta=tuple(eta),
        support_u_ok=support_u_ok,
        support_v_ok=support_v_ok,
    )


@dataclass(frozen=True)
class GameSolution:
    value: Fraction
    u_star: TreePmf
    v_star: EdgePmf
    partition: FeasiblePartition
    certificate: EquilibriumCheck
    eta_rational: tuple[Fraction, ...]
    modulus: ModulusResult


def _solve(g: Graph, tol: float) -> tuple[ModulusResult, tuple[Fraction, ...], FeasiblePartition]:
    result = compute_modulus(g, tol)
    eta = exact_round(result.eta_star, g.edge_count)
    return result, eta, extract_partition(g, eta)


def strength(g: Graph, tol: float = DEFAULT_TOL) -> Fraction:
    """Minimum feasible-partition weight, as ``1 / max(eta*)``."""
    return _solve(g, tol)[2].weight


def solve_game(g: Graph, tol: float = DEFAULT_TOL) -> GameSolution:
    result, eta, q = _solve(g, tol)
    v = EdgePmf.uniform_on(q.edge_set, g.edge_count)
    check = verify_equilibrium(g, result.mu_star, v, tol=0, exact=True)
    value = 1 / q.weight
    if not (check.is_equilibrium and check.support_u_ok and check.support_v_ok):
        raise EquilibriumError(
            f"certificate failed: ell_v = {check.ell_v_gamma}, eta_max = {check.eta_max}, "
            f"support_u_ok={check.support_u_ok}, support_v_ok={check.support_v_ok}"
        )
    if check.eta_max != value or check.ell_v_gamma != value:
        raise EquilibriumError(f"certificate sides {check.ell_v_gamma}, {check.eta_max} differ from value {value}")
    return GameSolution(value, result.mu_star, v, q, check, eta, result)


def check_homogeneity(g: Graph, result: ModulusResult) -> tuple[bool, Fraction]:
    reference = Fraction(g.tree_size, g.edge_count)
    eta = exact_round(result.eta_star, g.edge_count)
    homogeneous = len(set(eta)) == 1
    if homogeneous and eta[0] != reference:
        raise SolverError(f"constant usage {eta[0]} differs from (|V|-1)/|E| = {reference}")
    return homogeneous, reference


@dataclass(frozen=True)
class OneModResult:
    value: Fraction
    u_inf: TreePmf
    eta_inf: np.ndarray
    prices: np.ndarray
    iterations: int


def solve_game_1mod(g: Graph, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> OneModResult:
    """Column generation for ``max 1'lam  s.t.  N'lam <= 1, lam >= 0``.

    The edge prices are the LP duals; a tree whose price sum is below
    ``1 - tol`` is a column with positive reduced cost.
    """
    m = g.edge_count
    max_iter = max_iter or 50 * m
    first, _ = min_spanning_tree(g, [1.0] * m)
    cols = [first]
    for it in range(1, max_iter + 1):
        a = usage_matrix(cols, m).T
        res = linprog(-np.ones(len(cols)), A_ub=a, b_ub=np.ones(m), bounds=(0, None), method="highs")
        if res.status != 0:
            raise SolverError(f"1-modulus master LP failed: {res.message}")
        lam = res.x
        prices = -res.ineqlin.marginals
        tree, length = min_spanning_tree(g, list(prices))
        if length >= 1 - tol:
            break
        if tree in cols:
            raise SolverError(f"priced-out tree {tree.edge_ids} already in the master LP")
        cols.append(tree)
    else:
        raise SolverError(f"1-modulus column generation did not converge in {max_iter} iterations")

    total = float(lam.sum())
    value = Fraction(total).limit_denominator(g.tree_size)
    if abs(float(value) - total) > 1e-7:
        raise SolverError(f"1-modulus value {total!r} is not a fraction with denominator <= {g.tree_size}")
    probs = np.where(lam > 1e-12 * total, lam, 0.0) / total
    probs /= probs.sum()
    u = TreePmf({t: float(p) for t, p in zip(cols, probs) if p > 0})
    eta = np.asarray(u.usage(m), dtype=float)
    if abs(eta.max() - 1 / float(value)) > 1e-7:
        raise SolverError(f"max usage {eta.max()!r} does not equal 1/value = {1 / float(value)!r}")
    return OneModResult(value, u, eta, prices, it)


def evaluate_uniform_strategy(g: Graph) -> tuple[tuple[Fraction, ...], Fraction]:
    """Exact edge usage of the uniform distribution over all spanning trees."""
    total = count_spanning_trees(g)
    eta0 = tuple(Fraction(count_trees_containing(g, e), total) for e in range(g.edge_count))
    return eta0, max(eta0)
