"""JSON wire formats.

Integers are emitted as JSON numbers while they fit in 64 bits and as
decimal strings beyond; rationals are "p/q" strings ("p" when integral).
Parsers accept both forms everywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .graphs import Divisor, RationalFunction, build_graph
from .metric import MetricDivisor, MetricGraph, PLFunction

_I64 = 2 ** 63


def int_to_json(x):
    x = int(x)
    return x if -_I64 <= x < _I64 else str(x)


def int_from_json(x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"expected an integer, got {x!r}")
    return int(x)


def frac_to_json(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_from_json(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {x!r}") from exc
    raise InputError(f"expected a rational, got {x!r}")


# -- finite graphs --------------------------------------------------------------


def graph_to_json(g):
    out = {"vertices": g.vertex_count,
           "edges": [[u, v] for u, v in g.edges]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def graph_from_json(data):
    try:
        n = int_from_json(data["vertices"])
        edges = [(int_from_json(u), int_from_json(v)) for u, v in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad graph JSON: {exc}") from exc
    return build_graph(n, edges, data.get("labels"))


def divisor_to_json(d):
    return {"coeffs": {str(i): int_to_json(c)
                       for i, c in enumerate(d.coeffs) if c != 0}}


def divisor_from_json(data, graph):
    try:
        entries = {int(k): int_from_json(v) for k, v in data["coeffs"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad divisor JSON: {exc}") from exc
    return Divisor.of(graph.vertex_count, entries)


def function_to_json(f, degree=None):
    out = {"values": [int_to_json(v) for v in f.values]}
    if degree is not None:
        out["degree"] = degree
    return out


def function_from_json(data):
    try:
        values = tuple(int_from_json(v) for v in data["values"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad function JSON: {exc}") from exc
    return RationalFunction(values)


def element_to_json(el):
    return {"degree": el.degree,
            "values": [int_to_json(v) for v in el.function.values]}


# -- metric graphs ---------------------------------------------------------------


def metric_graph_to_json(g):
    out = {"model": graph_to_json(g.model),
           "lengths": {str(e): frac_to_json(x) for e, x in enumerate(g.lengths)}}
    if g.is_refinement:
        out["is_refinement"] = True
    return out


def metric_graph_from_json(data):
    try:
        model = graph_from_json(data["model"])
        lengths = [frac_from_json(data["lengths"][str(e)])
                   for e in range(model.edge_count)]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad metric graph JSON: {exc}") from exc
    return MetricGraph(model, tuple(lengths), bool(data.get("is_refinement", False)))


def point_to_json(p):
    if p.is_vertex:
        return {"vertex": p.index}
    return {"edge": p.index, "offset": frac_to_json(p.offset)}


def point_from_json(data, graph):
    if "vertex" in data:
        return graph.vertex_point(int_from_json(data["vertex"]))
    try:
        return graph.point(int_from_json(data["edge"]),
                           frac_from_json(data["offset"]))
    except KeyError as exc:
        raise InputError("point JSON needs 'vertex' or 'edge'+'offset'") from exc


def metric_divisor_to_json(d):
    return {"points": [{"point": point_to_json(p), "coeff": int_to_json(c)}
                       for p, c in d.items]}


def metric_divisor_from_json(data, graph):
    try:
        items = tuple((point_from_json(row["point"], graph),
                       int_from_json(row["coeff"]))
                      for row in data["points"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad metric divisor JSON: {exc}") from exc
    return MetricDivisor(graph, items)


def pl_function_to_json(f):
    return {"edges": [{"edge": e,
                       "breakpoints": [[frac_to_json(o), frac_to_json(v)]
                                       for o, v in bps]}
                      for e, bps in enumerate(f.segs)]}


def pl_function_from_json(data, graph):
    try:
        segs = [None] * graph.model.edge_count
        for row in data["edges"]:
            segs[int_from_json(row["edge"])] = [
                (frac_from_json(o), frac_from_json(v))
                for o, v in row["breakpoints"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"bad PL function JSON: {exc}") from exc
    if any(s is None for s in segs):
        raise InputError("PL function JSON must cover every edge")
    return PLFunction(graph, segs)


def dumps(obj):
    """Deterministic JSON text: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2)


def load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc
