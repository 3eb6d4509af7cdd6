"""Command-line front end.

Subcommands:

* ``w1 INSTANCE.json``         exact distance of a tree instance via flow,
  potential, and (when small enough) the LP oracle, with an agreement check.
* ``sweep``                    tables of exact distances vs their linear
  asymptotes over parameter grids, as CSV or JSON.
* ``series``                   coefficient dump of the generating-function
  evaluations for one family.
* ``asym``                     the (A, B) coefficients for one family.
* ``verify-ineq``              the coefficient ordering chain over a grid.
* ``verify SUITE``             seeded verification suites; exit status 0 iff
  every check passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .asymptotics import ball_AB, sphere_AB, srw_AB
from .errors import TreeOTError, TooLarge
from .families import ball_gf, sphere_gf, srw_closed_form, srw_g_table, srw_profile
from .instances import dump_instance, load_instance
from .lp import FiniteGraph, verify_duality, w1_lp
from .rational import decimal_string, format_rational, parse_rational
from .regular import (PairGeometry, RadialProfile, ball_profile, build_truncated_tree,
                      radial_measure, sphere_profile, w1_radial_flow_formula,
                      w1_radial_formula)
from .suites import DEFAULT_SEED, SUITE_NAMES, run_suite
from .tree import (assignment_from, flow_cost, good_potential, potential_value,
                   unique_flow, w1_tree)

SWEEP_HEADER = ("family", "alpha", "d", "q", "n", "w1_exact", "w1_decimal", "asym", "residual")


def _parse_int_range(text: str) -> list[int]:
    """``"2"``, ``"1,3,5"`` or ``"1..6"`` into a list of ints."""
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    return out


def _parse_alpha_list(text: str) -> list[Fraction]:
    return [parse_rational(chunk.strip()) for chunk in text.split(",")]


def parse_profile_spec(spec: str, q: int) -> tuple[str, Fraction | None, int, RadialProfile]:
    """Profile mini-language: ``srw:alpha=1/2,n=6`` | ``sphere:r=6`` |
    ``ball:r=6`` | ``custom:[1/2,0,1/3]``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "custom":
        body = rest.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"custom profile needs a [..] list, got {rest!r}")
        values = [parse_rational(tok) for tok in body[1:-1].split(",") if tok.strip()]
        return "custom", None, 0, RadialProfile(tuple(values))
    fields = {}
    for item in rest.split(","):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        fields[key.strip()] = value.strip()
    if kind == "srw":
        alpha = parse_rational(fields.get("alpha", "0"))
        n = int(fields.get("n", "1"))
        return "srw", alpha, n, srw_profile(alpha, q, n)
    if kind == "sphere":
        r = int(fields.get("r", "1"))
        return "sphere", None, r, sphere_profile(q, r)
    if kind == "ball":
        r = int(fields.get("r", "1"))
        return "ball", None, r, ball_profile(q, r)
    raise ValueError(f"unknown profile kind {kind!r}")


def _cmd_w1(args: argparse.Namespace) -> int:
    if args.radial:
        return _cmd_w1_radial(args)
    if not args.instance:
        raise ValueError("give an instance file, or --radial with --q/--d")
    tree, mu, nu = load_instance(args.instance)
    rho = assignment_from(mu, nu)
    flow = unique_flow(tree, rho)
    via_flow = flow_cost(flow)
    phi = good_potential(tree, flow)
    via_potential = potential_value(rho, phi)
    paths = {"flow": via_flow, "potential": via_potential}
    lp_note = None
    duality = None
    try:
        graph = FiniteGraph.from_tree(tree)
        via_lp, _ = w1_lp(graph, mu, nu)
        paths["lp"] = via_lp
        duality = verify_duality(graph, mu, nu, phi)
    except TooLarge as exc:
        lp_note = str(exc)
    agree = len({v for v in paths.values()}) == 1
    doc = {
        "w1": format_rational(via_flow),
        "w1_decimal": decimal_string(via_flow),
        "paths": {k: format_rational(v) for k, v in paths.items()},
        "agree": agree,
    }
    if duality is not None:
        doc["duality"] = duality.as_dict()
        agree = agree and duality.optimal_certificate
        doc["agree"] = agree
    if lp_note:
        doc["lp_skipped"] = lp_note
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for name, value in paths.items():
            print(f"w1 via {name}: {format_rational(value)}")
        if duality is not None:
            print(f"duality certificate: primal={duality.as_dict()['primal']} "
                  f"dual={duality.as_dict()['dual']} "
                  f"optimal={duality.optimal_certificate}")
        if lp_note:
            print(f"lp skipped: {lp_note}")
        print(f"w1 = {format_rational(via_flow)} ({decimal_string(via_flow)})")
        print(f"agreement: {'ok' if agree else 'MISMATCH'}")
    return 0 if agree else 1


def _cmd_w1_radial(args: argparse.Namespace) -> int:
    """Distance between the X- and Y-centered copies of one radial profile,
    via the class-sum formula, the edge-sum formula, and the tree flow."""
    if args.q is None or args.d is None:
        raise ValueError("--radial needs --q and --d")
    geometry = PairGeometry(args.q, args.d)
    kind, _, _, profile = parse_profile_spec(args.radial, args.q)
    truncation = build_truncated_tree(args.q, args.d, profile.support_radius + args.d)
    mu = radial_measure(truncation, truncation.x, profile)
    nu = radial_measure(truncation, truncation.y, profile)
    paths = {
        "formula": w1_radial_formula(profile, geometry),
        "flow-sum": w1_radial_flow_formula(profile, geometry),
        "tree": w1_tree(truncation.tree, mu, nu),
    }
    if args.emit_instance:
        dump_instance(truncation.tree, mu, nu, args.emit_instance)
    agree = len(set(paths.values())) == 1
    value = paths["formula"]
    doc = {"profile": args.radial, "kind": kind, "q": args.q, "d": args.d,
           "w1": format_rational(value), "w1_decimal": decimal_string(value),
           "paths": {k: format_rational(v) for k, v in paths.items()}, "agree": agree}
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for name, v in paths.items():
            print(f"w1 via {name}: {format_rational(v)}")
        print(f"w1 = {format_rational(value)} ({decimal_string(value)})")
        print(f"agreement: {'ok' if agree else 'MISMATCH'}")
    return 0 if agree else 1


def _sweep_rows(args: argparse.Namespace) -> list[dict]:
    family = args.family
    d_list = _parse_int_range(args.d)
    q_list = _parse_int_range(args.q)
    n_list = _parse_int_range(args.n)
    alphas = _parse_alpha_list(args.alpha) if family == "srw" else [None]
    max_n = max(n_list)
    rows = []
    for q in sorted(set(q_list)):
        tables = {}
        if family == "srw":
            for alpha in alphas:
                tables[alpha] = srw_g_table(alpha, q, max_n)
        for alpha in alphas:
            for d in sorted(set(d_list)):
                geom = PairGeometry(q, d)
                if family == "srw":
                    asym = srw_AB(alpha, d, q)
                elif family == "sphere":
                    asym = sphere_AB(d, q)
                else:
                    asym = ball_AB(d, q)
                for n in sorted(set(n_list)):
                    if family == "srw":
                        profile = tables[alpha].column_profile(n)
                    elif family == "sphere":
                        profile = sphere_profile(q, n)
                    else:
                        profile = ball_profile(q, n)
                    w1 = w1_radial_formula(profile, geom)
                    line = asym.at(n)
                    rows.append({
                        "family": family,
                        "alpha": "" if alpha is None else format_rational(alpha),
                        "d": d, "q": q, "n": n,
                        "w1_exact": format_rational(w1),
                        "w1_decimal": decimal_string(w1),
                        "asym": decimal_string(line),
                        "residual": decimal_string(w1 - line),
                    })
    rows.sort(key=lambda r: (r["family"], r["alpha"], r["d"], r["q"], r["n"]))
    return rows


def _cmd_sweep(args: argparse.Namespace) -> int:
    rows = _sweep_rows(args)
    if args.format == "json":
        payload = json.dumps(rows, indent=2)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SWEEP_HEADER)
        writer.writeheader()
        writer.writerows(rows)
        payload = buf.getvalue().rstrip("\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0


def _cmd_series(args: argparse.Namespace) -> int:
    order = args.order
    if args.family == "srw":
        bundle = srw_closed_form(parse_rational(args.alpha), args.q, order)
    elif args.family == "sphere":
        bundle = sphere_gf(args.q, order)
    else:
        bundle = ball_gf(args.q, order)
    rows = [{"n": n,
             "gamma": format_rational(bundle.gammas[0][n]),
             "g_at_q": format_rational(bundle.g_at_q[n]),
             "g1_at_q": format_rational(bundle.g1_at_q[n])}
            for n in range(order + 1)]
    if args.emit == "json":
        print(json.dumps(rows, indent=2))
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=("n", "gamma", "g_at_q", "g1_at_q"))
        writer.writeheader()
        writer.writerows(rows)
    return 0


def _cmd_asym(args: argparse.Namespace) -> int:
    if args.family == "srw":
        result = srw_AB(parse_rational(args.alpha), args.d, args.q)
    elif args.family == "sphere":
        result = sphere_AB(args.d, args.q)
    else:
        result = ball_AB(args.d, args.q)
    print(json.dumps({
        "A": format_rational(result.A),
        "B": format_rational(result.B),
        "exact_for_large_n": result.exact_for_large_n,
    }))
    return 0


def _parse_grid(tokens: list[str]) -> tuple[list[Fraction], list[int], list[int]]:
    alphas = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(9, 10)]
    d_list = list(range(1, 7))
    q_list = list(range(2, 11))
    for token in tokens:
        key, _, value = token.partition("=")
        key = key.strip()
        if key == "alpha":
            alphas = _parse_alpha_list(value)
        elif key == "d":
            d_list = _parse_int_range(value)
        elif key == "q":
            q_list = _parse_int_range(value)
        else:
            raise ValueError(f"unknown grid field {key!r}")
    return alphas, d_list, q_list


def _cmd_verify_ineq(args: argparse.Namespace) -> int:
    from .asymptotics import verify_inequalities

    alphas, d_list, q_list = _parse_grid(args.grid or [])
    writer = csv.writer(sys.stdout)
    writer.writerow(["alpha", "d", "q", "chain_a", "chain_b", "ball_floor_equality", "passed"])
    all_ok = True
    for alpha in alphas:
        for d in d_list:
            for q in q_list:
                rep = verify_inequalities(alpha, d, q)
                ok = rep.passed and rep.ball_floor_equality == ((d, q) == (1, 2))
                all_ok &= ok
                writer.writerow([format_rational(alpha), d, q,
                                 rep.chain_a, rep.chain_b, rep.ball_floor_equality, ok])
    return 0 if all_ok else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite, seed=args.seed)
    doc = {"passed": all(r.passed for r in reports),
           "suites": [r.as_dict() for r in reports]}
    print(json.dumps(doc, indent=2))
    return 0 if doc["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeot",
        description="Exact transport distances on trees and regular-tree families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_w1 = sub.add_parser("w1", help="distance of a JSON tree instance, three ways")
    p_w1.add_argument("instance", nargs="?", help="path to an instance JSON file")
    p_w1.add_argument("--json", action="store_true", help="emit a JSON report")
    p_w1.add_argument("--radial", metavar="SPEC",
                      help="radial profile instead of a file: srw:alpha=1/2,n=6 | "
                           "sphere:r=6 | ball:r=6 | custom:[...]")
    p_w1.add_argument("--q", type=int, help="branching number (with --radial)")
    p_w1.add_argument("--d", type=int, help="center distance (with --radial)")
    p_w1.add_argument("--emit-instance", metavar="PATH",
                      help="also write the truncated instance as shared JSON")
    p_w1.set_defaults(func=_cmd_w1)

    p_sweep = sub.add_parser("sweep", help="exact distances vs asymptote over a grid")
    p_sweep.add_argument("--family", choices=("srw", "sphere", "ball"), required=True)
    p_sweep.add_argument("--alpha", default="0", help="comma list of rationals (srw only)")
    p_sweep.add_argument("--d", default="1", help="int, comma list, or lo..hi")
    p_sweep.add_argument("--q", default="2", help="int, comma list, or lo..hi")
    p_sweep.add_argument("--n", default="0..10", help="int, comma list, or lo..hi")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", help="write to a file instead of stdout")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_series = sub.add_parser("series", help="generating-function coefficient dump")
    p_series.add_argument("--family", choices=("srw", "sphere", "ball"), required=True)
    p_series.add_argument("--alpha", default="0", help="laziness (srw only)")
    p_series.add_argument("--q", type=int, required=True)
    p_series.add_argument("--order", type=int, default=64)
    p_series.add_argument("--emit", choices=("csv", "json"), default="csv")
    p_series.set_defaults(func=_cmd_series)

    p_asym = sub.add_parser("asym", help="linear asymptote coefficients A, B")
    p_asym.add_argument("--family", choices=("srw", "sphere", "ball"), required=True)
    p_asym.add_argument("--alpha", default="0", help="laziness (srw only)")
    p_asym.add_argument("--d", type=int, required=True)
    p_asym.add_argument("--q", type=int, required=True)
    p_asym.set_defaults(func=_cmd_asym)

    p_vi = sub.add_parser("verify-ineq", help="coefficient ordering chain over a grid")
    p_vi.add_argument("--grid", nargs="*", metavar="FIELD=SPEC",
                      help="e.g. alpha=0,1/4,1/2,9/10 d=1..6 q=2..10")
    p_vi.set_defaults(func=_cmd_verify_ineq)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=("all",) + SUITE_NAMES)
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TreeOTError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
