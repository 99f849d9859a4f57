"""Command-line surface: one subcommand per library operation.

Groups: `dp` (curve census, configurations, meet graphs), `bound` (the exact
bound evaluators) and `closure` (incidence-model queries).  Output is an
aligned table by default, JSON with --json, and DOT for `dp graph`.  Exit
codes: 0 success, 2 invalid input (one-line diagnostic on stderr), 1
internal error.

Big bound values print as digit count plus a binom(a,b)^k power form unless
--full is given; the JSON schema mirrors BoundReport.to_json_dict.  Model
files resolve first as literal paths, then inside $QL_FIXTURES, then among
the bundled fixtures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from pathlib import Path

from . import bounds, closure, negcurves
from .lattice import SurfaceModel

FIXTURE_DIR = Path(__file__).parent / "fixtures"
COMPACT_DIGITS = 50  # above this, tables and default JSON use the power form


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _emit_table(rows: list[tuple[str, object]]) -> None:
    width = max(len(key) for key, _ in rows)
    for key, value in rows:
        print(f"{key.ljust(width)}  {value}")


def _resolve_model(arg: str) -> closure.IncidenceModel:
    candidates = [Path(arg)]
    env_dir = os.environ.get("QL_FIXTURES")
    if env_dir:
        candidates.append(Path(env_dir) / arg)
    candidates.append(FIXTURE_DIR / arg)
    for candidate in candidates:
        if candidate.is_file():
            return closure.IncidenceModel.load(candidate)
    raise closure.ModelError(f"model file {arg!r} not found (tried {[str(c) for c in candidates]})")


# ---------------------------------------------------------------- dp group


def _cmd_dp_curves(args) -> int:
    surface = SurfaceModel(args.n)
    curves = negcurves.enumerate_minus_one(surface)
    if args.json:
        _emit_json(
            {
                "n": args.n,
                "count": len(curves),
                "by_family": dict(
                    sorted(
                        (family.value, sum(1 for c in curves if c.family is family))
                        for family in negcurves.Family
                    )
                ),
                "curves": [c.to_json() for c in curves],
            }
        )
    else:
        for curve in curves:
            print(f"{curve.label:<24}  {curve.family.value}")
        print(f"total: {len(curves)}")
    return 0


def _cmd_dp_configs(args) -> int:
    surface = SurfaceModel(args.n)
    k = args.k if args.k is not None else args.n
    configs = negcurves.disjoint_configurations(surface, k)
    breakdown = dict(
        sorted(
            __import__("collections").Counter(
                negcurves.composition_label(cfg) for cfg in configs
            ).items()
        )
    )
    if args.json:
        payload = {"n": args.n, "k": k, "total": len(configs), "breakdown": breakdown}
        if args.list:
            payload["configurations"] = [[c.cls.to_json() for c in cfg] for cfg in configs]
        _emit_json(payload)
    else:
        rows: list[tuple[str, object]] = [("n", args.n), ("k", k), ("total", len(configs))]
        rows += [(f"  {label}", count) for label, count in breakdown.items()]
        _emit_table(rows)
        if args.list:
            for cfg in configs:
                print("  " + ", ".join(c.label for c in cfg))
    return 0


def _cmd_dp_graph(args) -> int:
    surface = SurfaceModel(args.n)
    curves = negcurves.enumerate_minus_one(surface)
    if args.family:
        wanted = negcurves.Family(args.family)
        curves = [c for c in curves if c.family is wanted]
    graph = negcurves.meet_graph(surface, curves)
    if args.json:
        _emit_json(
            {
                "n": args.n,
                "family": args.family,
                "vertices": [c.label for c in graph.curves],
                "edges": [
                    [graph.curves[i].label, graph.curves[j].label]
                    for i in range(graph.n_vertices)
                    for j in range(i + 1, graph.n_vertices)
                    if graph.meet[i][j]
                ],
            }
        )
    else:
        sys.stdout.write(negcurves.to_dot(graph))
    return 0


# ------------------------------------------------------------- bound group


def _print_report(report: bounds.BoundReport, args) -> None:
    max_digits = 10**9 if args.full else COMPACT_DIGITS
    if args.json:
        _emit_json(report.to_json_dict(max_value_digits=max_digits))
        return
    rows: list[tuple[str, object]] = [("statement", report.statement)]
    rows += [(f"  {k}", v) for k, v in report.inputs.items()]
    digits = report.digit_count
    if digits is not None and digits > max_digits and report.structure:
        a, b = report.structure["binom"]
        rows.append(("value", f"binom({a},{b})^{report.structure['exponent']} ({digits} digits)"))
    else:
        rows.append(("value", report.value))
    rows.append(("log10", report.log10))
    _emit_table(rows)


def _cmd_bound_dichotomy(args) -> int:
    _print_report(bounds.dichotomy_bound(args.deg_l, args.deg_x), args)
    return 0


def _cmd_bound_chow(args) -> int:
    _print_report(bounds.chow_component_bound(args.d, args.surface_deg, args.h0), args)
    return 0


def _cmd_bound_leaf(args) -> int:
    profile = bounds.FoliationProfile(args.n, args.rank, args.sing_dim)
    payload = {
        "statement": "leaf_section",
        "inputs": {"n": args.n, "rank": args.rank, "sing_dim": args.sing_dim},
        "value": bounds.leaf_section_bound(profile),
        "profile_consistent": profile.is_consistent(),
    }
    if args.json:
        _emit_json(payload)
    else:
        _emit_table(
            [("statement", "leaf_section")]
            + [(f"  {k}", v) for k, v in payload["inputs"].items()]
            + [("value", payload["value"]), ("profile_consistent", payload["profile_consistent"])]
        )
    return 0


def _cmd_bound_sing(args) -> int:
    profile = bounds.FoliationProfile(args.n, args.rank, args.sing_dim)
    payload = {
        "statement": "sing_dim_lower_bound",
        "inputs": {"n": args.n, "rank": args.rank, "sing_dim": args.sing_dim},
        "value": bounds.sing_dim_lower_bound(profile),
        "profile_consistent": profile.is_consistent(),
    }
    if args.json:
        _emit_json(payload)
    else:
        _emit_table(
            [("statement", payload["statement"])]
            + [(f"  {k}", v) for k, v in payload["inputs"].items()]
            + [("value", payload["value"]), ("profile_consistent", payload["profile_consistent"])]
        )
    return 0


def _bool_payload(statement: str, inputs: dict, value: bool, args) -> int:
    if args.json:
        _emit_json({"statement": statement, "inputs": inputs, "holds": value})
    else:
        _emit_table(
            [("statement", statement)]
            + [(f"  {k}", v) for k, v in inputs.items()]
            + [("holds", value)]
        )
    return 0


def _cmd_bound_hodge_surface(args) -> int:
    holds = bounds.hodge_surface_check(args.d2, args.h2, args.dh)
    return _bool_payload(
        "hodge_surface", {"d2": args.d2, "h2": args.h2, "dh": args.dh}, holds, args
    )


def _cmd_bound_hodge_threefold(args) -> int:
    holds = bounds.hodge_threefold_check(args.d2h, args.h3, args.dh2)
    return _bool_payload(
        "hodge_threefold", {"d2h": args.d2h, "h3": args.h3, "dh2": args.dh2}, holds, args
    )


def _cmd_bound_leaf_degree(args) -> int:
    value = bounds.leaf_degree_bound(args.deg_l)
    if args.json:
        _emit_json({"statement": "leaf_degree", "inputs": {"deg_l": args.deg_l}, "value": value})
    else:
        _emit_table([("statement", "leaf_degree"), ("  deg_l", args.deg_l), ("value", value)])
    return 0


def _cmd_bound_h0(args) -> int:
    sections, ambient = bounds.h0_and_embedding_bounds(args.d)
    if args.json:
        _emit_json(
            {
                "statement": "h0_and_embedding",
                "inputs": {"d": args.d},
                "h0_bound": sections,
                "embedding_dim_bound": ambient,
            }
        )
    else:
        _emit_table(
            [
                ("statement", "h0_and_embedding"),
                ("  d", args.d),
                ("h0_bound", sections),
                ("embedding_dim_bound", ambient),
            ]
        )
    return 0


# ----------------------------------------------------------- closure group


def _cmd_closure_run(args) -> int:
    model = _resolve_model(args.model)
    result = closure.stable_closure(model, args.x, args.y)
    if args.json:
        _emit_json(
            {
                "basepoint": result.basepoint,
                "seed": result.seed,
                "leaf": sorted(result.leaf),
                "leaf_size": len(result.leaf),
                "chain": [sorted(step) for step in result.chain],
                "stable": result.stable,
                "joined": result.joined,
            }
        )
    else:
        _emit_table(
            [
                ("basepoint", result.basepoint),
                ("seed", result.seed),
                ("leaf", " ".join(sorted(result.leaf))),
                ("leaf_size", len(result.leaf)),
                ("chain", " -> ".join("{" + " ".join(sorted(s)) + "}" for s in result.chain)),
                ("stable", result.stable),
                ("joined", result.joined),
            ]
        )
    return 0


def _cmd_closure_e(args) -> int:
    model = _resolve_model(args.model)
    value = closure.e_invariant(model, args.x, args.y)
    if args.json:
        _emit_json({"x": args.x, "y": args.y, "e": value})
    else:
        _emit_table([("x", args.x), ("y", args.y), ("e", value)])
    return 0


def _cmd_closure_dist(args) -> int:
    model = _resolve_model(args.model)
    dist = closure.e_distribution(model)
    if args.json:
        _emit_json({"e_distribution": {str(k): v for k, v in dist.items()}})
    else:
        _emit_table([("e", "pairs")] + [(f"  {k}", v) for k, v in dist.items()])
    return 0


def _cmd_closure_assumption(args) -> int:
    model = _resolve_model(args.model)
    report = closure.dichotomy_report(model)
    if args.json:
        _emit_json(
            {
                "split_pairs": [list(p) for p in report["split"]],
                "nested_pairs": [list(p) for p in report["nested"]],
                "equal_pairs": len(report["equal"]),
                "symmetric": not report["split"],
            }
        )
    else:
        _emit_table(
            [
                ("split_pairs", " ".join(f"({a},{b})" for a, b in report["split"]) or "-"),
                ("nested_pairs", " ".join(f"({a},{b})" for a, b in report["nested"]) or "-"),
                ("equal_pairs", len(report["equal"])),
                ("symmetric", not report["split"]),
            ]
        )
    return 0


def _cmd_closure_partition(args) -> int:
    model = _resolve_model(args.model)
    partition = closure.leaf_partition(model, args.x)
    if args.json:
        _emit_json(
            {
                "basepoint": partition.basepoint,
                "leaves": [
                    {"leaf": sorted(g.leaf), "seeds": list(g.seeds), "size": len(g.leaf)}
                    for g in partition.groups
                ],
                "sizes": list(partition.sizes),
                "overlaps": [list(p) for p in partition.overlaps],
            }
        )
    else:
        rows: list[tuple[str, object]] = [("basepoint", partition.basepoint)]
        for i, group in enumerate(partition.groups):
            rows.append((f"  leaf[{i}]", " ".join(sorted(group.leaf)) + f"  (seeds: {' '.join(group.seeds)})"))
        rows.append(("sizes", " ".join(map(str, partition.sizes))))
        rows.append(("overlaps", partition.overlaps or "-"))
        _emit_table(rows)
    return 0


def _cmd_closure_quotient(args) -> int:
    model = _resolve_model(args.model)
    report = closure.quotient_e_check(model, args.x)
    if args.json:
        _emit_json(
            {
                "basepoint": report.basepoint,
                "applicable": report.applicable,
                "reason": report.reason,
                "leaves": {k: list(v) for k, v in report.leaves.items()} if report.leaves else None,
                "points": list(report.model.points) if report.model else None,
                "lines": [sorted(line) for line in report.model.lines] if report.model else None,
                "e_distribution": {str(k): v for k, v in report.e_distribution.items()}
                if report.e_distribution is not None
                else None,
                "all_e_le_one": report.all_e_le_one,
            }
        )
    else:
        rows: list[tuple[str, object]] = [
            ("basepoint", report.basepoint),
            ("applicable", report.applicable),
        ]
        if not report.applicable:
            rows.append(("reason", report.reason))
        else:
            for name, members in report.leaves.items():
                rows.append((f"  {name}", " ".join(members)))
            rows.append(("lines", [sorted(line) for line in report.model.lines]))
            rows.append(("e_distribution", report.e_distribution))
            rows.append(("all_e_le_one", report.all_e_le_one))
        _emit_table(rows)
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasilines",
        description="Del Pezzo (-1)-curve census, quasi-line counting bounds, incidence closures.",
    )
    top = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        p.set_defaults(func=func)
        return p

    dp = top.add_parser("dp", help="del Pezzo curve census and configurations").add_subparsers(
        dest="command", required=True
    )
    p = leaf(dp, "curves", _cmd_dp_curves, "list all (-1)-curve classes")
    p.add_argument("--n", type=int, required=True, help="number of blown-up points (0..8)")
    p = leaf(dp, "configs", _cmd_dp_configs, "pairwise-disjoint configurations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="configuration size (default n)")
    p.add_argument("--list", action="store_true", help="include the configurations themselves")
    p = leaf(dp, "graph", _cmd_dp_graph, "meet graph in DOT (or JSON) form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--family",
        choices=[f.value for f in negcurves.Family],
        default=None,
        help="restrict to one family (e.g. line for the Petersen graph at n=5)",
    )

    bound = top.add_parser("bound", help="exact bound evaluators").add_subparsers(
        dest="command", required=True
    )
    p = leaf(bound, "dichotomy", _cmd_bound_dichotomy, "16 deg_l^3 / deg_x")
    p.add_argument("--deg-l", dest="deg_l", type=int, required=True)
    p.add_argument("--deg-x", dest="deg_x", type=int, required=True)
    p.add_argument("--full", action="store_true", help="print all digits of big values")
    p = leaf(bound, "chow", _cmd_bound_chow, "Chow-component bound binom(...)^k")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--surface-deg", dest="surface_deg", type=int, required=True)
    p.add_argument("--h0", type=int, default=None, help="override the section count")
    p.add_argument("--full", action="store_true", help="print all digits of big values")
    p = leaf(bound, "leaf", _cmd_bound_leaf, "guaranteed E.l bound from the singular locus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--sing-dim", dest="sing_dim", type=int, required=True)
    p = leaf(bound, "sing", _cmd_bound_sing, "lower bound rank-1 for the singular dimension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--sing-dim", dest="sing_dim", type=int, required=True)
    p = leaf(bound, "hodge-surface", _cmd_bound_hodge_surface, "check D2*H2 <= DH^2")
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--h2", type=int, required=True)
    p.add_argument("--dh", type=int, required=True)
    p = leaf(bound, "hodge-threefold", _cmd_bound_hodge_threefold, "check D2H*H3 <= DH2^2")
    p.add_argument("--d2h", type=int, required=True)
    p.add_argument("--h3", type=int, required=True)
    p.add_argument("--dh2", type=int, required=True)
    p = leaf(bound, "leaf-degree", _cmd_bound_leaf_degree, "comb-smoothing bound 4 deg_l^2")
    p.add_argument("--deg-l", dest="deg_l", type=int, required=True)
    p = leaf(bound, "h0", _cmd_bound_h0, "section and embedding-dimension bounds")
    p.add_argument("--d", type=int, required=True)

    clo = top.add_parser("closure", help="incidence-model queries").add_subparsers(
        dest="command", required=True
    )

    def model_leaf(name, func, help_text, *, x=False, y=False):
        p = leaf(clo, name, func, help_text)
        p.add_argument("--model", required=True, help="model file (path, $QL_FIXTURES, or bundled)")
        if x:
            p.add_argument("--x", required=True, help="basepoint id")
        if y:
            p.add_argument("--y", required=True, help="second point / seed id")
        return p

    model_leaf("run", _cmd_closure_run, "minimal stable closure of y for basepoint x", x=True, y=True)
    model_leaf("e", _cmd_closure_e, "number of lines through both points", x=True, y=True)
    model_leaf("dist", _cmd_closure_dist, "e-invariant histogram over all pairs")
    model_leaf("assumption", _cmd_closure_assumption, "symmetry check / split-pair witnesses")
    model_leaf("partition", _cmd_closure_partition, "leaves through every seed", x=True)
    model_leaf("quotient", _cmd_closure_quotient, "collapse leaves and re-measure e", x=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
