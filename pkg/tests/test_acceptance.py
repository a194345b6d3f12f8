"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ZOO, er_graphs  # noqa: E402
from treemod import families  # noqa: E402
from treemod.game import (  # noqa: E402
    check_homogeneity,
    solve_game,
    solve_game_1mod,
    verify_equilibrium,
)
from treemod.graph import SpanningTree, enumerate_spanning_trees, min_spanning_tree  # noqa: E402
from treemod.modulus import TreePmf, compute_modulus, expected_overlap  # noqa: E402
from treemod.oracle import oracle_meo, oracle_strength  # noqa: E402

F = Fraction
SWEEP_TREE_CAP = 2000


class Criterion:
    def __init__(self, label):
        self.label = label
        self.failures: list[str] = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    def report(self):
        status = "PASS" if not self.failures else "FAIL"
        line = f"[{status}] {self.label}"
        if self.failures:
            line += " :: " + "; ".join(self.failures[:5])
        print(line, file=sys.__stdout__, flush=True)
        assert not self.failures, line


def ac1_paw():
    c = Criterion("AC1 paw: Mod2 = 3/7, rho* = (3/7, 2/7, 2/7, 2/7), value 1 with v* on the pendant edge")
    g = families.paw()
    r = compute_modulus(g)
    c.check(abs(r.mod2 - 3 / 7) <= 1e-8, f"Mod2 = {r.mod2!r}")
    c.check(np.abs(r.rho_star - [3 / 7, 2 / 7, 2 / 7, 2 / 7]).max() <= 1e-8, f"rho* = {r.rho_star}")
    s = solve_game(g)
    c.check(s.value == 1, f"value = {s.value}")
    c.check(tuple(s.v_star) == (1, 0, 0, 0), f"v* = {s.v_star}")
    return c


def ac2_diamond():
    c = Criterion("AC2 diamond: Mod2 = 5/9, eta* = 3/5, value 3/5, v* uniform, homogeneous")
    g = families.diamond()
    s = solve_game(g)
    c.check(abs(s.modulus.mod2 - 5 / 9) <= 1e-8, f"Mod2 = {s.modulus.mod2!r}")
    c.check(s.eta_rational == (F(3, 5),) * 5, f"eta = {s.eta_rational}")
    c.check(s.value == F(3, 5), f"value = {s.value}")
    c.check(tuple(s.v_star) == (F(1, 5),) * 5, f"v* = {s.v_star}")
    c.check(check_homogeneity(g, s.modulus)[0], "not homogeneous")
    return c


def ac3_strategies():
    c = Criterion("AC3 diamond strategies: S1 max usage 1 on e5, S2 3/4, S3 + uniform v is an equilibrium at 3/5")
    g = families.diamond()
    t = [SpanningTree(x) for x in families.DIAMOND_INTRO_TREES]
    s1 = TreePmf({t[0]: F(1, 2), t[1]: F(1, 2)})
    s2 = TreePmf({x: F(1, 4) for x in t})
    s3 = TreePmf({t[0]: F(2, 5), t[1]: F(1, 5), t[2]: F(1, 5), t[3]: F(1, 5)})
    e5 = [0, 0, 0, 0, 1]
    chk = verify_equilibrium(g, s1, e5, tol=0)
    c.check(chk.eta_max == 1 and chk.eta[families.DIAMOND_DIAGONAL] == 1, f"S1 eta = {chk.eta}")
    c.check(not chk.is_equilibrium and chk.ell_v_gamma == 0, "S1 reported as equilibrium")
    chk = verify_equilibrium(g, s2, [1, 0, 0, 0, 0], tol=0)
    c.check(chk.eta_max == F(3, 4) and not chk.is_equilibrium, f"S2 eta_max = {chk.eta_max}")
    chk = verify_equilibrium(g, s3, [F(1, 5)] * 5, tol=0)
    c.check(chk.is_equilibrium, "S3 not an equilibrium")
    c.check(chk.ell_v_gamma == chk.eta_max == F(3, 5), f"S3 sides {chk.ell_v_gamma}, {chk.eta_max}")
    return c


def ac4_house():
    c = Criterion("AC4 house: eta* = 2/3, value 2/3, homogeneous, forbidden trees carry no mass")
    g = families.house()
    s = solve_game(g)
    c.check(s.eta_rational == (F(2, 3),) * 6, f"eta = {s.eta_rational}")
    c.check(s.value == F(2, 3), f"value = {s.value}")
    c.check(check_homogeneity(g, s.modulus) == (True, F(2, 3)), "homogeneity")
    forbidden = [x for x in enumerate_spanning_trees(g) if len(set(x) & families.HOUSE_TOP_EDGES) == 1]
    c.check(len(forbidden) == 2, f"{len(forbidden)} forbidden trees")
    for x in forbidden:
        c.check(s.u_star[x] < 1e-10, f"mu*({x.edge_ids}) = {s.u_star[x]!r}")
    return c


def ac5_overlap():
    c = Criterion("AC5 expected overlap: paw uniform 7/3, diamond uniform 29/16, diamond optimal 9/5")
    paw, d = families.paw(), families.diamond()
    checks = [
        (TreePmf({x: F(1, 3) for x in enumerate_spanning_trees(paw)}), 4, 7 / 3, "paw uniform"),
        (TreePmf({x: F(1, 8) for x in enumerate_spanning_trees(d)}), 5, 29 / 16, "diamond uniform"),
        (
            TreePmf({x: F(3 if families.DIAMOND_DIAGONAL in x else 2, 20) for x in enumerate_spanning_trees(d)}),
            5,
            9 / 5,
            "diamond 3/20-2/20",
        ),
        (compute_modulus(d).mu_star, 5, 9 / 5, "diamond solver mu*"),
    ]
    for mu, m, want, name in checks:
        got = expected_overlap(mu, m)
        c.check(abs(float(got) - want) <= 1e-12, f"{name}: {got}")
    return c


def ac6_complete():
    c = Criterion("AC6 K4..K8: value 2/n, homogeneous, under 10 s each")
    for n in range(4, 9):
        g = families.complete_graph(n)
        start = time.perf_counter()
        s = solve_game(g)
        homogeneous, _ = check_homogeneity(g, s.modulus)
        elapsed = time.perf_counter() - start
        c.check(s.value == F(2, n), f"K{n} value {s.value}")
        c.check(homogeneous, f"K{n} not homogeneous")
        c.check(elapsed < 10, f"K{n} took {elapsed:.1f} s")
    return c


def ac7_two_k5():
    c = Criterion("AC7 two K5 + two bridges: value 1/2, eta* 1/2 | 2/5, nonhomogeneous, 1-mod value 2")
    g = families.two_k5_bridged(2)
    s = solve_game(g)
    bridges = set(families.bridge_ids(g, 5))
    c.check(s.value == F(1, 2), f"value {s.value}")
    want = tuple(F(1, 2) if e in bridges else F(2, 5) for e in range(g.edge_count))
    c.check(s.eta_rational == want, f"eta {s.eta_rational}")
    c.check(not check_homogeneity(g, s.modulus)[0], "reported homogeneous")
    one = solve_game_1mod(g)
    c.check(one.value == 2, f"1-mod value {one.value}")
    c.check(abs(one.eta_inf.max() - 0.5) <= 1e-9, f"1-mod max usage {one.eta_inf.max()!r}")
    return c


def ac8_bridge_sequence():
    c = Criterion("AC8 K5-K6 with b bridges: values 1, 1/2, 5/13, oracle(b=4), 1/3; partition sizes")
    _, b4_partition = oracle_strength(families.k5_k6_bridged(4), vertex_cap=11)
    expected = {1: F(1), 2: F(1, 2), 3: F(5, 13), 4: 1 / b4_partition.weight, 5: F(1, 3)}
    for b, want in expected.items():
        s = solve_game(families.k5_k6_bridged(b))
        c.check(s.value == want, f"b={b}: value {s.value}, expected {want}")
        if b == 3:
            c.check(len(s.partition.edge_set) == 13 and s.partition.k == 6, f"b=3 partition {s.partition.k}")
        if b == 5:
            c.check(s.partition.k == 11 and len(s.partition.edge_set) == 30, f"b=5 partition {s.partition.k}")
    return c


def ac9_sweep():
    c = Criterion("AC9 50 seeded random graphs: Mod2 matches oracle to 1e-6, strength matches exactly")
    graphs = er_graphs()
    c.check(len(graphs) == 50 and all(g.vertex_count <= 7 for _, g in graphs), "seed list")
    for entry, g in graphs:
        r = compute_modulus(g)
        _, meo = oracle_meo(g, cap=SWEEP_TREE_CAP)
        c.check(abs(r.mod2 - 1 / meo) <= 1e-6, f"seed {entry['seed']}: Mod2 {r.mod2!r} vs {1 / meo!r}")
        w, _ = oracle_strength(g)
        c.check(solve_game(g).partition.weight == w, f"seed {entry['seed']}: strength vs {w}")
    return c


def ac10_properties():
    c = Criterion("AC10 property suite over every test graph")
    graphs = list(ZOO.items()) + [(f"er{e['seed']}", g) for e, g in er_graphs()]
    for name, g in graphs:
        s = solve_game(g)
        r = s.modulus
        c.check(abs(r.eta_star.sum() - g.tree_size) <= 1e-9, f"{name}: usage sum")
        c.check(abs(r.multipliers.sum() - 2 * r.mod2) <= 1e-8, f"{name}: dual normalization")
        c.check(min_spanning_tree(g, r.rho_star)[1] >= 1 - r.tolerance_used, f"{name}: admissibility")
        chk = verify_equilibrium(g, s.u_star, s.v_star, tol=0, exact=True)
        c.check(chk.is_equilibrium and chk.support_u_ok and chk.support_v_ok, f"{name}: certificate")
        q = s.partition
        c.check(all(len(set(x) & q.edge_set) == q.k - 1 for x, _ in s.u_star), f"{name}: partition crossing")
    return c


CRITERIA = [
    ac1_paw,
    ac2_diamond,
    ac3_strategies,
    ac4_house,
    ac5_overlap,
    ac6_complete,
    ac7_two_k5,
    ac8_bridge_sequence,
    ac9_sweep,
    ac10_properties,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_acceptance(criterion):
    criterion().report()


if __name__ == "__main__":
    failed = 0
    for criterion in CRITERIA:
        try:
            criterion().report()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
