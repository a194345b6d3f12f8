"""Spanning-tree 2-modulus by constraint generation.

The restricted problem keeps a list of trees ``rows`` and solves

    minimize  sum(rho**2)   subject to  rho(T) >= 1  for T in rows,  rho >= 0.

Its dual in the multipliers ``lam >= 0`` is ``max 1'lam - |N'lam|^2 / 4`` with
``rho = N'lam / 2``.  Because every tree has ``|V|-1`` edges, ``N c = 1`` for
the constant vector ``c = 1/(|V|-1)``, so the dual is exactly the
nonnegative least-squares problem ``min |N'x - c|^2, x >= 0`` with
``lam = 2x``.  The outer loop adds the minimum spanning tree under the
current ``rho`` until no tree is shorter than ``1 - tol``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import nnls

from .graph import Graph, SpanningTree, min_spanning_tree

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
KKT_TOL = 1e-10


class SolverError(RuntimeError):
    """The numerical solve failed to converge or broke an optimality check."""


class RoundingError(SolverError):
    """No small-denominator rational fits a computed usage value."""


class TreePmf:
    """Probability mass function on spanning trees.

    Probabilities may be floats or ``Fraction``; zero-mass trees are dropped.
    """

    def __init__(self, entries: Mapping[SpanningTree, float], atol: float = 1e-12):
        cleaned = {t: p for t, p in entries.items() if p != 0}
        if not cleaned:
            raise ValueError("pmf has empty support")
        if any(p < 0 for p in cleaned.values()):
            raise ValueError("pmf has negative mass")
        total = sum(cleaned.values())
        if abs(total - 1) > atol:
            raise ValueError(f"pmf sums to {float(total)!r}, not 1")
        self.entries: dict[SpanningTree, float] = dict(sorted(cleaned.items()))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def __getitem__(self, tree: SpanningTree):
        return self.entries.get(tree, 0)

    def __repr__(self):
        return f"TreePmf({len(self)} trees)"

    @property
    def support(self) -> list[SpanningTree]:
        return list(self.entries)

    def usage(self, edge_count: int) -> list:
        """Expected usage ``eta(e) = P(e in tree)``, in the pmf's number type."""
        eta = [0] * edge_count
        for tree, p in self.entries.items():
            for e in tree.edge_ids:
                eta[e] += p
        return eta

    def ranked(self) -> list[tuple[SpanningTree, float]]:
        """Entries by decreasing probability, ties broken by the tree's edge ids."""
        return sorted(self.entries.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class ModulusResult:
    mod2: float
    rho_star: np.ndarray
    eta_star: np.ndarray
    mu_star: TreePmf
    active_trees: list[SpanningTree]
    multipliers: np.ndarray
    iterations: int
    tolerance_used: float
    certificate_length: float
    energies: list[float] = field(default_factory=list)
    upper_bounds: list[float] = field(default_factory=list)


def usage_matrix(rows: Sequence[SpanningTree], edge_count: int) -> np.ndarray:
    n = np.zeros((len(rows), edge_count))
    for i, tree in enumerate(rows):
        n[i, list(tree.edge_ids)] = 1.0
    return n


def solve_qp_restricted(rows: Sequence[SpanningTree], edge_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Minimum-energy density admissible for ``rows``, with its KKT multipliers.

    Returns ``(rho, lam)`` with ``2 rho = N' lam`` exactly (``rho`` is built
    from ``lam``), ``N rho >= 1`` and ``lam * (N rho - 1) = 0`` up to
    ``KKT_TOL``.
    """
    if not rows:
        raise ValueError("restricted problem needs at least one tree")
    sizes = {len(t) for t in rows}
    if len(sizes) != 1:
        raise ValueError("rows are not all trees of one graph")
    tree_size = sizes.pop()
    n = usage_matrix(rows, edge_count)
    target = np.full(edge_count, 1.0 / tree_size)
    x, _ = nnls(n.T, target, maxiter=50 * max(len(rows), edge_count))
    x[x < 1e-14 * max(x.max(), 1.0)] = 0.0
    lam = 2.0 * x
    rho = n.T @ x
    lengths = n @ rho
    slack = lengths - 1.0
    if slack.min() < -KKT_TOL or np.abs(lam * slack).max() > KKT_TOL:
        raise SolverError(
            f"restricted QP on {len(rows)} trees missed KKT tolerance: "
            f"min slack {slack.min():.3e}, max complementarity {np.abs(lam * slack).max():.3e}; "
            f"rows={[t.edge_ids for t in rows]}"
        )
    return rho, lam


def extract_pmf(lam: Sequence[float], trees: Sequence[SpanningTree]) -> TreePmf:
    """Normalize tree multipliers into a pmf supported where ``lam > 0``."""
    lam = np.asarray(lam, dtype=float)
    if len(lam) != len(trees):
        raise ValueError("one multiplier per tree")
    if np.any(lam < 0):
        raise ValueError("multipliers must be nonnegative")
    total = lam.sum()
    if total <= 0:
        raise ValueError("all multipliers are zero")
    probs = lam / total
    return TreePmf({t: float(p) for t, p in zip(trees, probs) if p > 0})


def expected_overlap(mu: TreePmf, edge_count: int):
    """Expected size of the intersection of two independent draws from ``mu``."""
    return sum(x * x for x in mu.usage(edge_count))


def compute_modulus(g: Graph, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> ModulusResult:
    """Exterior-point solve of Mod2 for the spanning trees of ``g``."""
    if not 0 < tol <= 1e-4:
        raise ValueError(f"tol must lie in (0, 1e-4], got {tol}")
    m = g.edge_count
    max_iter = max_iter or 50 * m
    first, _ = min_spanning_tree(g, [1.0] * m)
    rows = [first]
    seen = {first}
    energies: list[float] = []
    uppers: list[float] = []
    for it in range(1, max_iter + 1):
        rho, lam = solve_qp_restricted(rows, m)
        energy = float(rho @ rho)
        if energies and energy < energies[-1] * (1 - 1e-12):
            raise SolverError(f"restricted energy decreased: {energies[-1]!r} -> {energy!r}")
        energies.append(energy)
        tree, length = min_spanning_tree(g, rho)
        # rho / length is admissible for every tree, so its energy bounds Mod2 above
        upper = energy / length**2 if length > 0 else np.inf
        uppers.append(upper)
        if energy > upper * (1 + 1e-12):
            raise SolverError(f"duality sandwich broken: lower {energy!r} > upper {upper!r}")
        log.debug("iter %d: %d trees, energy %.15g, shortest tree %.15g", it, len(rows), energy, length)
        if length >= 1 - tol:
            break
        if tree in seen:
            raise SolverError(f"violated tree {tree.edge_ids} already active; restricted solve inaccurate")
        rows.append(tree)
        seen.add(tree)
    else:
        raise SolverError(f"no convergence after {max_iter} outer iterations (tol={tol})")

    mod2 = energy
    if abs(lam.sum() - 2 * mod2) > 1e-8:
        raise SolverError(f"dual normalization off: 1'lam = {lam.sum()!r}, 2 Mod2 = {2 * mod2!r}")
    mu = extract_pmf(lam, rows)
    eta = np.asarray(mu.usage(m), dtype=float)
    if abs(eta.sum() - g.tree_size) > 1e-9:
        raise SolverError(f"expected usage sums to {eta.sum()!r}, not {g.tree_size}")
    return ModulusResult(
        mod2=mod2,
        rho_star=rho,
        eta_star=eta,
        mu_star=mu,
        active_trees=list(rows),
        multipliers=lam,
        iterations=it,
        tolerance_used=tol,
        certificate_length=float(length),
        energies=energies,
        upper_bounds=uppers,
    )


def exact_round(eta: Sequence[float], edge_count: int) -> tuple[Fraction, ...]:
    """Snap each entry to the unique fraction ``p/q`` with ``q <= edge_count``
    lying within ``1 / (2 edge_count**2)`` of it.

    Distinct such fractions are at least ``1/edge_count**2`` apart, so the
    match is unique whenever it exists.  The rounded vector must keep the
    (integer) sum of the input.
    """
    window = Fraction(1, 2 * edge_count * edge_count)
    out = []
    for i, x in enumerate(eta):
        exact = Fraction(float(x))
        q = exact.limit_denominator(edge_count)
        if abs(q - exact) > window:
            raise RoundingError(
                f"entry {i} = {float(x)!r} has no fraction with denominator <= {edge_count} "
                f"within {float(window):.3g}; tighten tol and re-solve"
            )
        if not 0 <= q <= 1:
            raise RoundingError(f"entry {i} rounds to {q}, outside [0, 1]")
        out.append(q)
    total = sum(out)
    target = round(float(sum(float(x) for x in eta)))
    if total != target:
        raise RoundingError(f"rounded usage sums to {total}, expected {target}")
    return tuple(out)
