"""Command-line front door.

Exit codes: 0 computed/verified, 1 verified-false (an asked-for property
does not hold), 2 input error, 3 budget exceeded.  Output is deterministic
JSON on stdout (DOT or text where requested); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from .budget import Budget
from .errors import BudgetExceeded, HypothesisFailure, InputError, TropdivError
from .generators import decompose, graded_cone, hilbert_basis, certify_basis, verify_gn
from .graphs import canonical_divisor
from .linear_systems import RgdElement, extremals, rgd_enumerate
from .metric import canonical_divisor_metric, linear_equiv_metric
from .serialize import (divisor_from_json, dumps, element_to_json,
                        frac_to_json, function_from_json, graph_from_json,
                        load_json_file, metric_divisor_from_json,
                        metric_divisor_to_json, metric_graph_from_json,
                        pl_function_to_json, point_to_json)
from .witness import (WitnessInstance, build_witness, check_hypotheses,
                      complete_graph_instance, indecomposability_check)


@dataclass(frozen=True)
class Config:
    budget: Budget
    fmt: str
    output: str | None


def _add_common(parser):
    parser.add_argument("--format", choices=["json", "dot", "text"],
                        default="json", dest="fmt")
    parser.add_argument("--output", default=None, help="write to a file instead of stdout")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for reproducing randomized test suites")
    parser.add_argument("--max-vertices", type=int, default=24)
    parser.add_argument("--max-degree", type=int, default=64)
    parser.add_argument("--max-products", type=int, default=1_000_000)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropdiv",
        description="Divisor theory and canonical semi-rings of finite "
                    "graphs and Z-metric graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rgd", help="enumerate R(G, m*D) modulo constants")
    p.add_argument("--graph", required=True)
    p.add_argument("--divisor", required=True,
                   help="path to divisor JSON, or 'K' for the canonical divisor")
    p.add_argument("--m", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("extremals", help="extremal representatives of R(G, m*D)")
    p.add_argument("--graph", required=True)
    p.add_argument("--divisor", required=True)
    p.add_argument("--m", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("generators", help="Hilbert basis of the graded semi-ring")
    p.add_argument("--graph", required=True)
    p.add_argument("--divisor", required=True)
    p.add_argument("--certify-bound", type=int, default=0,
                   help="also certify every degree up to this bound")
    _add_common(p)

    p = sub.add_parser("check-generated",
                       help="decompose a target over lower-degree elements")
    p.add_argument("--graph", required=True)
    p.add_argument("--divisor", required=True)
    p.add_argument("--target", required=True,
                   help="JSON with 'values' and 'degree'")
    p.add_argument("--below-degree", type=int, default=None,
                   help="use generators of degree <= this (default: degree-1)")
    _add_common(p)

    p = sub.add_parser("verify-gn", help="unbounded generator degree certificate")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    trop = sub.add_parser("trop", help="Z-metric graph commands")
    tropsub = trop.add_subparsers(dest="trop_command", required=True)

    p = tropsub.add_parser("equiv", help="decide linear equivalence of metric divisors")
    p.add_argument("--curve", required=True)
    p.add_argument("--d1", required=True)
    p.add_argument("--d2", required=True)
    _add_common(p)

    p = tropsub.add_parser("witness", help="build the non-generation witness")
    p.add_argument("--instance", required=True,
                   help="JSON with 'curve', 'divisor' ('K' allowed), 'edge', 'n'")
    p.add_argument("--s", type=int, required=True)
    _add_common(p)

    p = tropsub.add_parser("complete-graph",
                           help="instance on the complete graph K_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--len", type=int, default=1, dest="edge_len")
    p.add_argument("--s", type=int, nargs="*", default=[])
    _add_common(p)

    return parser


def _config(args):
    budget = Budget(max_firing_vertices=args.max_vertices,
                    max_degree=args.max_degree,
                    max_products=args.max_products)
    if args.max_vertices <= 0 or args.max_degree <= 0 or args.max_products <= 0:
        raise InputError("budgets must be positive")
    return Config(budget=budget, fmt=args.fmt, output=args.output)


def _load_graph_divisor(args):
    graph = graph_from_json(load_json_file(args.graph))
    if args.divisor == "K":
        divisor = canonical_divisor(graph)
    else:
        divisor = divisor_from_json(load_json_file(args.divisor), graph)
    return graph, divisor


def _load_instance(path):
    data = load_json_file(path)
    try:
        curve = metric_graph_from_json(data["curve"])
        if data["divisor"] == "K":
            divisor = canonical_divisor_metric(curve)
        else:
            divisor = metric_divisor_from_json(data["divisor"], curve)
        return WitnessInstance(curve, divisor, edge=int(data["edge"]),
                               n=int(data["n"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad instance JSON: {exc}") from exc


def _witness_payload(inst, s, result, obstruction):
    return {
        "s": s,
        "degree": result.degree,
        "N": result.big_n,
        "r": point_to_json(result.r),
        "order_triple": list(result.order_triple) if result.order_triple else None,
        "claims": result.claims,
        "ftilde": pl_function_to_json(result.ftilde),
        "f": pl_function_to_json(result.f),
        "obstruction": {str(k): v for k, v in obstruction["rows"].items()},
        "obstruction_holds": obstruction["obstruction_holds"],
    }


def _witness_dot(inst, result):
    """Model rendering with p, q highlighted and r spliced into its edge."""
    g = inst.graph
    lines = ["graph G {"]
    for x in range(g.model.vertex_count):
        label = g.model.label_of(x)
        extra = ""
        if x == inst.p:
            extra = ' color="red" xlabel="p"'
        elif x == inst.q:
            extra = ' color="red" xlabel="q"'
        lines.append(f'  {x} [label="{label}"{extra}];')
    lines.append(f'  r [label="r@{frac_to_json(result.r.offset)}" color="blue"];')
    for e, (u, v) in enumerate(g.model.edges):
        if e == inst.edge:
            off = frac_to_json(result.r.offset)
            rest = frac_to_json(g.lengths[e] - result.r.offset)
            lines.append(f'  {u} -- r [label="{off}"];')
            lines.append(f'  r -- {v} [label="{rest}"];')
        else:
            lines.append(f'  {u} -- {v} [label="{frac_to_json(g.lengths[e])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _hypotheses_payload(report):
    out = {"checks": dict(report["checks"]), "all_pass": report["all_pass"]}
    w = report.get("equivalence_witness")
    if w is not None:
        out["equivalence_witness"] = pl_function_to_json(w)
    return out


def dispatch(args, config):
    budget = config.budget
    cmd = args.command

    if cmd == "rgd":
        graph, divisor = _load_graph_divisor(args)
        elements = rgd_enumerate(graph, args.m * divisor, degree=args.m, budget=budget)
        return 0, {"command": "rgd", "degree": args.m,
                   "count": len(elements),
                   "elements": [element_to_json(el) for el in elements]}

    if cmd == "extremals":
        graph, divisor = _load_graph_divisor(args)
        els = extremals(graph, args.m * divisor, degree=args.m, budget=budget)
        return 0, {"command": "extremals", "degree": args.m,
                   "count": len(els),
                   "elements": [element_to_json(el) for el in els]}

    if cmd == "generators":
        graph, divisor = _load_graph_divisor(args)
        basis = hilbert_basis(graded_cone(graph, divisor), budget)
        payload = {"command": "generators",
                   "degrees": basis.degrees(),
                   "units": basis.unit_description,
                   "elements": [element_to_json(el) for el in basis.elements]}
        if args.certify_bound:
            report = certify_basis(basis, args.certify_bound, budget)
            payload["certified"] = {str(m): c for m, c in report.items()}
        return 0, payload

    if cmd == "check-generated":
        graph, divisor = _load_graph_divisor(args)
        data = load_json_file(args.target)
        target_f = function_from_json(data).normalized()
        try:
            degree = int(data["degree"])
        except (KeyError, TypeError) as exc:
            raise InputError("target JSON needs a 'degree'") from exc
        below = args.below_degree if args.below_degree is not None else degree - 1
        gens = []
        for m in range(1, below + 1):
            gens.extend(rgd_enumerate(graph, m * divisor, degree=m, budget=budget))
        cert = decompose(RgdElement(degree, target_f), gens, budget)
        payload = {"command": "check-generated",
                   "generated": cert.generated,
                   "generated_below": cert.generated,
                   "search_bound": below,
                   "products_checked": cert.products_checked,
                   "search": cert.search_description,
                   "terms": [{"shift": s, "product": list(prod)}
                             for s, prod in cert.terms]}
        return (0 if cert.generated else 1), payload

    if cmd == "verify-gn":
        try:
            report = verify_gn(args.n, budget)
        except AssertionError as exc:
            return 1, {"command": "verify-gn", "n": args.n,
                       "verified": False, "error": str(exc)}
        report = dict(report)
        if "obstruction" in report:
            report["obstruction"] = {str(k): v
                                     for k, v in report["obstruction"].items()}
        report["command"] = "verify-gn"
        report["verified"] = True
        return 0, report

    if cmd == "trop":
        return dispatch_trop(args, config)

    raise InputError(f"unknown command {cmd!r}")


def dispatch_trop(args, config):
    budget = config.budget
    cmd = args.trop_command

    if cmd == "equiv":
        curve = metric_graph_from_json(load_json_file(args.curve))
        d1 = metric_divisor_from_json(load_json_file(args.d1), curve)
        d2 = metric_divisor_from_json(load_json_file(args.d2), curve)
        w = linear_equiv_metric(curve, d1, d2)
        payload = {"command": "trop equiv",
                   "equivalent": w is not None,
                   "witness": pl_function_to_json(w) if w is not None else None}
        return (0 if w is not None else 1), payload

    if cmd == "witness":
        inst = _load_instance(args.instance)
        try:
            result = build_witness(inst, args.s, budget=budget)
        except HypothesisFailure as exc:
            return 1, {"command": "trop witness", "verified": False,
                       "error": str(exc),
                       "hypotheses": _hypotheses_payload(check_hypotheses(inst))}
        obstruction = indecomposability_check(inst, args.s, budget)
        if config.fmt == "dot":
            return 0, _witness_dot(inst, result)
        payload = _witness_payload(inst, args.s, result, obstruction)
        payload["command"] = "trop witness"
        return 0, payload

    if cmd == "complete-graph":
        inst = complete_graph_instance(args.n, args.edge_len)
        hypo = check_hypotheses(inst)
        payload = {"command": "trop complete-graph",
                   "n": args.n,
                   "edge_length": args.edge_len,
                   "n_param": inst.n,
                   "genus": inst.genus,
                   "canonical_degree": inst.d,
                   "divisor": metric_divisor_to_json(inst.divisor),
                   "hypotheses": _hypotheses_payload(hypo)}
        certificates = []
        for s in args.s:
            result = build_witness(inst, s, budget=budget)
            obstruction = indecomposability_check(inst, s, budget)
            certificates.append(_witness_payload(inst, s, result, obstruction))
        if certificates:
            payload["certificates"] = certificates
        return (0 if hypo["all_pass"] else 1), payload

    raise InputError(f"unknown trop command {cmd!r}")


def _emit(payload, config):
    text = payload if isinstance(payload, str) else dumps(payload) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if args.seed is not None:
            random.seed(args.seed)
        code, payload = dispatch(args, config)
    except BudgetExceeded as exc:
        _emit({"error": "budget exceeded", "detail": str(exc)},
              Config(Budget(), "json", getattr(args, "output", None)))
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TropdivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, config)
    return code


if __name__ == "__main__":
    sys.exit(main())
