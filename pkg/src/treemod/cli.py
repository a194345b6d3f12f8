"""Command-line front end.

    treemod game diamond.edges
    treemod verify diamond.edges --strategy strat.json --output text

Exit codes: 0 success, 1 bad input or usage, 2 solver failure,
3 the ``verify`` command found a non-equilibrium.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .game import (
    EdgePmf,
    FeasiblePartition,
    check_homogeneity,
    evaluate_uniform_strategy,
    solve_game,
    solve_game_1mod,
    strength,
    verify_equilibrium,
)
from .graph import CapExceededError, Graph, GraphError, make_tree, parse_graph
from .modulus import DEFAULT_TOL, SolverError, TreePmf, compute_modulus, exact_round
from .oracle import DEFAULT_TREE_CAP, DEFAULT_VERTEX_CAP, oracle_meo, oracle_strength

SCHEMA = "treemod.report/1"
COMMANDS = ("modulus", "game", "strength", "verify", "homogeneity", "uniform", "oracle")

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_NOT_EQUILIBRIUM = 0, 1, 2, 3

log = logging.getLogger("treemod")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Path
    tol: float = DEFAULT_TOL
    cap_trees: int = DEFAULT_TREE_CAP
    cap_vertices: int = DEFAULT_VERTEX_CAP
    output: str = "json"
    oracle: bool = False
    strategy_path: Path | None = None
    seed: int | None = None  # reserved; every pipeline is deterministic

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if not 0 < self.tol <= 1e-4:
            raise InputError(f"--tol must lie in (0, 1e-4], got {self.tol}")
        if self.output not in ("json", "text"):
            raise InputError(f"--output must be json or text, got {self.output!r}")
        if self.command == "verify" and self.strategy_path is None:
            raise InputError("verify needs --strategy")


# ------------------------------------------------------------ rendering


def rational(x) -> dict:
    x = Fraction(x)
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": float(x)}


def parse_rational(text: str) -> Fraction:
    p, q = text.split("/")
    return Fraction(int(p), int(q))


def pmf_entries(mu: TreePmf) -> list[dict]:
    return [{"edges": list(t.edge_ids), "prob": float(p)} for t, p in mu.ranked()]


def partition_doc(q: FeasiblePartition) -> dict:
    return {
        "k": q.k,
        "parts": [list(p) for p in q.parts],
        "edge_set": sorted(q.edge_set),
        "edge_count": len(q.edge_set),
        "weight": rational(q.weight),
    }


def check_doc(check) -> dict:
    def num(x):
        return rational(x) if isinstance(x, Fraction) else float(x)

    return {
        "is_equilibrium": check.is_equilibrium,
        "ell_v_gamma": num(check.ell_v_gamma),
        "eta_max": num(check.eta_max),
        "witness_tree": list(check.witness_tree.edge_ids),
        "support_u_ok": check.support_u_ok,
        "support_v_ok": check.support_v_ok,
    }


def _fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------ commands


def load_strategy(g: Graph, path: Path) -> tuple[TreePmf, list[Fraction]]:
    """Read ``{"trees": [{"edges": [...], "prob": p}], "edge_pmf": [...]}``.

    Probabilities may be JSON numbers or strings such as ``"0.4"`` or
    ``"2/5"``; they are converted to exact fractions from their decimal text.
    """
    try:
        doc = json.loads(path.read_text())
        trees = {}
        for entry in doc["trees"]:
            tree = make_tree(g, entry["edges"])
            trees[tree] = trees.get(tree, 0) + Fraction(str(entry["prob"]))
        u = TreePmf(trees)
        v = list(EdgePmf(Fraction(str(p)) for p in doc["edge_pmf"]))
    except (OSError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad strategy file {path}: {exc}") from exc
    if len(v) != g.edge_count:
        raise InputError(f"edge_pmf has {len(v)} entries, graph has {g.edge_count} edges")
    return u, v


def _oracle_section(g: Graph, cfg: RunConfig, mod2: float | None, w: Fraction | None) -> dict:
    try:
        _, meo = oracle_meo(g, cfg.cap_trees)
        ow, oq = oracle_strength(g, cfg.cap_vertices)
    except CapExceededError as exc:
        return {"skipped": str(exc)}
    doc = {"meo_value": meo, "mod2": 1 / meo, "strength": rational(ow), "min_partition": partition_doc(oq)}
    if mod2 is not None:
        doc["mod2_agrees"] = abs(mod2 - 1 / meo) <= 1e-6
    if w is not None:
        doc["strength_agrees"] = w == ow
    return doc


def run(cfg: RunConfig) -> tuple[int, dict]:
    try:
        g = parse_graph(cfg.input_path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input_path}: {exc}") from exc
    except GraphError as exc:
        raise InputError(f"{cfg.input_path}: {exc}") from exc
    report: dict = {
        "schema": SCHEMA,
        "version": __version__,
        "command": cfg.command,
        "graph": {
            "input": cfg.input_path.name,
            "vertices": g.vertex_count,
            "edges": [list(e) for e in g.edges],
            "labels": list(g.labels) if g.labels else None,
        },
        "tol": cfg.tol,
    }
    code = EXIT_OK
    mod2 = w = None

    if cfg.command == "modulus":
        r = compute_modulus(g, cfg.tol)
        eta = exact_round(r.eta_star, g.edge_count)
        mod2 = r.mod2
        report.update(
            mod2=r.mod2,
            rho_star=[float(x) for x in r.rho_star],
            eta_star=[float(x) for x in r.eta_star],
            eta_exact=[_fmt(x) for x in eta],
            iterations=r.iterations,
            active_trees=len(r.active_trees),
            certificate_length=r.certificate_length,
            mu_star=pmf_entries(r.mu_star),
        )
    elif cfg.command == "game":
        s = solve_game(g, cfg.tol)
        mod2, w = s.modulus.mod2, s.partition.weight
        report.update(
            value=rational(s.value),
            eta_max=rational(max(s.eta_rational)),
            eta_exact=[_fmt(x) for x in s.eta_rational],
            partition=partition_doc(s.partition),
            v_star=[_fmt(x) for x in s.v_star],
            u_star=pmf_entries(s.u_star),
            certificate=check_doc(s.certificate),
        )
    elif cfg.command == "strength":
        w = strength(g, cfg.tol)
        one = solve_game_1mod(g, cfg.tol)
        report.update(strength=rational(w), one_modulus_value=rational(one.value))
    elif cfg.command == "verify":
        u, v = load_strategy(g, cfg.strategy_path)
        check = verify_equilibrium(g, u, v, tol=cfg.tol)
        report.update(eta=[_fmt(x) for x in check.eta], **check_doc(check))
        code = EXIT_OK if check.is_equilibrium else EXIT_NOT_EQUILIBRIUM
    elif cfg.command == "homogeneity":
        r = compute_modulus(g, cfg.tol)
        mod2 = r.mod2
        homogeneous, reference = check_homogeneity(g, r)
        report.update(
            homogeneous=homogeneous,
            reference_value=rational(reference),
            eta_exact=[_fmt(x) for x in exact_round(r.eta_star, g.edge_count)],
        )
    elif cfg.command == "uniform":
        eta0, top = evaluate_uniform_strategy(g)
        report.update(eta0=[_fmt(x) for x in eta0], eta0_max=rational(top))
    elif cfg.command == "oracle":
        report["oracle"] = _oracle_section(g, cfg, None, None)
        if "skipped" in report["oracle"]:
            raise CapExceededError(report["oracle"]["skipped"])

    if cfg.oracle and cfg.command != "oracle":
        report["oracle"] = _oracle_section(g, cfg, mod2, w)
        if report["oracle"].get("mod2_agrees") is False or report["oracle"].get("strength_agrees") is False:
            log.error("solver disagrees with the brute-force oracle")
            code = EXIT_SOLVER
    return code, report


def render_text(report: dict) -> str:
    cmd = report["command"]
    g = report["graph"]
    lines = [f"{cmd}: {g['input']} ({g['vertices']} vertices, {len(g['edges'])} edges)"]
    if cmd == "game":
        q = report["partition"]
        c = report["certificate"]
        lines += [
            f"value = {report['value']['exact']}",
            f"‖η*‖_∞ = {report['eta_max']['exact']}",
            f"partition: k = {q['k']}, |E_Q| = {q['edge_count']}, w(Q) = {q['weight']['exact']}",
            f"support of u*: {len(report['u_star'])} trees",
            f"ℓ_v(Γ) = {c['ell_v_gamma']['exact']} ≥ ‖η‖_∞ = {c['eta_max']['exact']}",
        ]
    elif cmd == "verify":
        ell, top = report["ell_v_gamma"], report["eta_max"]
        rel = "≥" if report["is_equilibrium"] else "<"
        lines += [
            f"equilibrium: {'yes' if report['is_equilibrium'] else 'no'}",
            f"ℓ_v(Γ) = {ell['exact']} {rel} ‖η‖_∞ = {top['exact']}",
            f"η = ({', '.join(report['eta'])})",
        ]
    elif cmd == "modulus":
        lines += [
            f"Mod2 = {report['mod2']:.12g}",
            f"η* = ({', '.join(report['eta_exact'])})",
            f"‖η*‖_∞ = {max(parse_rational(x) for x in report['eta_exact'])}",
            f"support of μ*: {len(report['mu_star'])} trees, {report['iterations']} iterations",
        ]
    elif cmd == "strength":
        lines += [f"strength = {report['strength']['exact']}", f"1-modulus value = {report['one_modulus_value']['exact']}"]
    elif cmd == "homogeneity":
        lines += [
            f"homogeneous: {'yes' if report['homogeneous'] else 'no'}",
            f"(|V|-1)/|E| = {report['reference_value']['exact']}",
            f"η* = ({', '.join(report['eta_exact'])})",
        ]
    elif cmd == "uniform":
        lines += [f"‖η₀‖_∞ = {report['eta0_max']['exact']}", f"η₀ = ({', '.join(report['eta0'])})"]
    if "oracle" in report:
        o = report["oracle"]
        if "skipped" in o:
            lines.append(f"oracle skipped: {o['skipped']}")
        else:
            lines.append(
                f"oracle: Mod2 = {o['mod2']:.12g}, strength = {o['strength']['exact']}"
                + (f", Mod2 agrees: {o['mod2_agrees']}" if "mod2_agrees" in o else "")
                + (f", strength agrees: {o['strength_agrees']}" if "strength_agrees" in o else "")
            )
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treemod", description="Spanning-tree modulus and the secure broadcast game.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", type=Path, help="edge-list file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--output", choices=("json", "text"), default="json")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force when within caps")
    p.add_argument("--strategy", type=Path, help="strategy JSON (verify only)")
    p.add_argument("--cap-trees", type=int, default=DEFAULT_TREE_CAP)
    p.add_argument("--cap-vertices", type=int, default=DEFAULT_VERTEX_CAP)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        cfg = RunConfig(
            command=args.command,
            input_path=args.input,
            tol=args.tol,
            cap_trees=args.cap_trees,
            cap_vertices=args.cap_vertices,
            output=args.output,
            oracle=args.oracle,
            strategy_path=args.strategy,
        )
        code, report = run(cfg)
    except InputError as exc:
        print(f"treemod: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, CapExceededError) as exc:
        print(f"treemod: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if cfg.output == "json":
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
