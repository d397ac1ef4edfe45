"""Z-metric graphs, piecewise linear functions, and metric chip firing.

A metric graph is a finite multigraph with positive rational edge lengths,
glued from intervals.  Rational functions are continuous piecewise linear
maps with integer slopes; the order at a point is the sum of outgoing
slopes, div(f) the divisor of orders.  Exact rational arithmetic is used
throughout; there is no floating point anywhere.

Circles are excluded: a model in which every vertex has valence 2 is
rejected.  Constructors insist on the canonical model (no 2-valent
vertices) unless the refinement flag says the graph is a deliberate
subdivision.  Edges of infinite length are not representable by design;
every construction here lives on compact graphs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .budget import DEFAULT_BUDGET
from .errors import (EmptySubgraph, InputError, InvalidPL,
                     NonIntegralRefinement, NotMember, SizeMismatch)
from .graphs import Divisor, FiniteGraph, RationalFunction, build_graph
from .graphs import linear_equiv as graph_linear_equiv


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, order=True)
class Point:
    """Canonical point: either a model vertex or an interior edge point."""

    kind: int  # 0 = vertex, 1 = edge interior (sort order)
    index: int
    offset: Fraction = Fraction(0)

    @staticmethod
    def vertex(i):
        return Point(0, i)

    @staticmethod
    def interior(edge, offset):
        return Point(1, edge, _frac(offset))

    @property
    def is_vertex(self):
        return self.kind == 0

    def describe(self, graph=None):
        if self.is_vertex:
            if graph is not None:
                return graph.model.label_of(self.index)
            return f"v{self.index}"
        return f"e{self.index}@{self.offset}"


@dataclass(frozen=True)
class MetricGraph:
    model: FiniteGraph
    lengths: tuple[Fraction, ...]
    is_refinement: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(_frac(x) for x in self.lengths))
        if len(self.lengths) != self.model.edge_count:
            raise InputError("one length per edge required")
        if self.model.edge_count == 0:
            raise InputError("a metric graph needs at least one edge")
        if any(x <= 0 for x in self.lengths):
            raise InputError("edge lengths must be positive")
        if all(self.model.valence(x) == 2 for x in range(self.model.vertex_count)):
            raise InputError("graph is homeomorphic to the circle; not supported")
        if not self.is_refinement:
            for x in range(self.model.vertex_count):
                if self.model.valence(x) == 2:
                    raise InputError(
                        f"vertex {x} has valence 2; pass a canonical model or "
                        "set is_refinement")

    @property
    def zflag(self):
        return all(x.denominator == 1 for x in self.lengths)

    def genus(self):
        return self.model.genus()

    def point(self, edge, offset):
        """Canonicalize (edge, offset): endpoints become vertex points."""
        offset = _frac(offset)
        if not 0 <= edge < self.model.edge_count:
            raise InputError(f"edge {edge} out of range")
        length = self.lengths[edge]
        if not 0 <= offset <= length:
            raise InputError(f"offset {offset} outside [0, {length}]")
        u, v = self.model.edges[edge]
        if offset == 0:
            return Point.vertex(u)
        if offset == length:
            return Point.vertex(v)
        return Point.interior(edge, offset)

    def vertex_point(self, i):
        if not 0 <= i < self.model.vertex_count:
            raise InputError(f"vertex {i} out of range")
        return Point.vertex(i)

    def is_z_point(self, p):
        if p.is_vertex:
            return True
        return (p.offset.denominator == 1
                and (self.lengths[p.index] - p.offset).denominator == 1)


def build_metric_graph(vertex_count, edges, lengths, labels=None, is_refinement=False):
    model = build_graph(vertex_count, edges, labels)
    return MetricGraph(model, tuple(_frac(x) for x in lengths), is_refinement)


@dataclass(frozen=True)
class MetricDivisor:
    """Finite formal sum of points with nonzero integer coefficients."""

    graph: MetricGraph
    items: tuple[tuple[Point, int], ...]

    def __post_init__(self):
        merged = {}
        for p, c in self.items:
            merged[p] = merged.get(p, 0) + int(c)
        cleaned = tuple(sorted((p, c) for p, c in merged.items() if c != 0))
        object.__setattr__(self, "items", cleaned)

    @staticmethod
    def of(graph, entries):
        return MetricDivisor(graph, tuple(entries.items()))

    @staticmethod
    def zero(graph):
        return MetricDivisor(graph, ())

    def coeff(self, p):
        for q, c in self.items:
            if q == p:
                return c
        return 0

    def degree(self):
        return sum(c for _, c in self.items)

    def support(self):
        return frozenset(p for p, _ in self.items)

    def is_effective(self):
        return all(c >= 0 for _, c in self.items)

    def is_z_divisor(self):
        return all(self.graph.is_z_point(p) for p, _ in self.items)

    def _match(self, other):
        if self.graph is not other.graph and self.graph != other.graph:
            raise SizeMismatch("divisors on different metric graphs")

    def __add__(self, other):
        self._match(other)
        return MetricDivisor(self.graph, self.items + other.items)

    def __sub__(self, other):
        self._match(other)
        return MetricDivisor(self.graph,
                             self.items + tuple((p, -c) for p, c in other.items))

    def __rmul__(self, k):
        return MetricDivisor(self.graph, tuple((p, int(k) * c) for p, c in self.items))

    def __neg__(self):
        return MetricDivisor(self.graph, tuple((p, -c) for p, c in self.items))


def canonical_divisor_metric(graph):
    """(val(x) - 2)[x] over model vertices; 2-valent vertices drop out."""
    entries = {}
    for x in range(graph.model.vertex_count):
        c = graph.model.valence(x) - 2
        if c != 0:
            entries[Point.vertex(x)] = c
    return MetricDivisor.of(graph, entries)


class PLFunction:
    """Continuous piecewise linear function with integer slopes.

    Stored per edge as a breakpoint list [(offset, value), ...] covering
    [0, length]; construction canonicalizes (merges collinear pieces) and
    validates continuity across shared vertices and integrality of slopes.
    """

    __slots__ = ("graph", "segs", "_vertex_values")

    def __init__(self, graph, segs):
        self.graph = graph
        model = graph.model
        if len(segs) != model.edge_count:
            raise InvalidPL("one breakpoint list per edge required")
        norm = []
        for e, bps in enumerate(segs):
            bps = [(_frac(o), _frac(v)) for o, v in bps]
            bps.sort()
            if not bps or bps[0][0] != 0 or bps[-1][0] != graph.lengths[e]:
                raise InvalidPL(f"edge {e}: breakpoints must span [0, length]")
            offs = [o for o, _ in bps]
            if len(set(offs)) != len(offs):
                raise InvalidPL(f"edge {e}: duplicate breakpoint offsets")
            slopes = []
            for (o1, v1), (o2, v2) in zip(bps, bps[1:]):
                s = (v2 - v1) / (o2 - o1)
                if s.denominator != 1:
                    raise InvalidPL(f"edge {e}: non-integer slope {s}")
                slopes.append(int(s))
            keep = [bps[0]]
            for i in range(1, len(bps) - 1):
                if slopes[i - 1] != slopes[i]:
                    keep.append(bps[i])
            if len(bps) > 1:
                keep.append(bps[-1])
            norm.append(tuple(keep))
        self.segs = tuple(norm)

        values = [None] * model.vertex_count
        for e, (u, v) in enumerate(model.edges):
            for x, val in ((u, norm[e][0][1]), (v, norm[e][-1][1])):
                if values[x] is None:
                    values[x] = val
                elif values[x] != val:
                    raise InvalidPL(f"discontinuous at vertex {x}")
        self._vertex_values = tuple(values)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def constant(graph, c):
        c = _frac(c)
        return PLFunction(graph, [[(0, c), (graph.lengths[e], c)]
                                  for e in range(graph.model.edge_count)])

    @staticmethod
    def from_vertex_values(graph, vertex_values, interior=None):
        """Linear interpolation of vertex values, with optional interior
        breakpoints given as {edge: [(offset, value), ...]}."""
        interior = interior or {}
        segs = []
        for e, (u, v) in enumerate(graph.model.edges):
            bps = [(Fraction(0), _frac(vertex_values[u])),
                   (graph.lengths[e], _frac(vertex_values[v]))]
            for o, val in interior.get(e, ()):
                bps.append((_frac(o), _frac(val)))
            segs.append(bps)
        return PLFunction(graph, segs)

    # -- value semantics -------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PLFunction)
                and self.graph == other.graph and self.segs == other.segs)

    def __hash__(self):
        return hash((id(self.graph.model), self.segs))

    def __repr__(self):
        return f"PLFunction({self.segs!r})"

    def vertex_value(self, x):
        return self._vertex_values[x]

    def value_at(self, p):
        if p.is_vertex:
            return self._vertex_values[p.index]
        bps = self.segs[p.index]
        for (o1, v1), (o2, v2) in zip(bps, bps[1:]):
            if o1 <= p.offset <= o2:
                s = (v2 - v1) / (o2 - o1)
                return v1 + s * (p.offset - o1)
        raise InputError("point outside edge")

    def min_value(self):
        return min(v for bps in self.segs for _, v in bps)

    # -- tropical algebra -------------------------------------------------------

    def shift(self, c):
        c = _frac(c)
        return PLFunction(self.graph, [[(o, v + c) for o, v in bps]
                                       for bps in self.segs])

    def normalized(self):
        return self.shift(-self.min_value())

    def power(self, k):
        """Tropical k-th power: values scaled by the integer k."""
        k = int(k)
        return PLFunction(self.graph, [[(o, k * v) for o, v in bps]
                                       for bps in self.segs])

    def odot(self, other):
        self._match(other)
        segs = []
        for e in range(self.graph.model.edge_count):
            offs = sorted({o for o, _ in self.segs[e]} | {o for o, _ in other.segs[e]})
            segs.append([(o, self._eval_edge(e, o) + other._eval_edge(e, o))
                         for o in offs])
        return PLFunction(self.graph, segs)

    def oplus(self, other):
        self._match(other)
        segs = []
        for e in range(self.graph.model.edge_count):
            offs = sorted({o for o, _ in self.segs[e]} | {o for o, _ in other.segs[e]})
            # insert crossings of the two graphs inside each common piece
            extra = []
            for o1, o2 in zip(offs, offs[1:]):
                a1, a2 = self._eval_edge(e, o1), self._eval_edge(e, o2)
                b1, b2 = other._eval_edge(e, o1), other._eval_edge(e, o2)
                d1, d2 = a1 - b1, a2 - b2
                if d1 * d2 < 0:
                    t = o1 + (o2 - o1) * d1 / (d1 - d2)
                    extra.append(t)
            alloffs = sorted(set(offs) | set(extra))
            segs.append([(o, max(self._eval_edge(e, o), other._eval_edge(e, o)))
                         for o in alloffs])
        return PLFunction(self.graph, segs)

    def _eval_edge(self, e, o):
        bps = self.segs[e]
        for (o1, v1), (o2, v2) in zip(bps, bps[1:]):
            if o1 <= o <= o2:
                return v1 + (v2 - v1) / (o2 - o1) * (o - o1)
        raise InputError("offset outside edge")

    def _match(self, other):
        if self.graph != other.graph:
            raise SizeMismatch("functions on different metric graphs")

    # -- orders and divisor ------------------------------------------------------

    def ord_at(self, p):
        if p.is_vertex:
            total = 0
            for e, (u, v) in enumerate(self.graph.model.edges):
                bps = self.segs[e]
                if u == p.index:
                    total += self._slope(bps, 0)
                if v == p.index:
                    total -= self._slope(bps, len(bps) - 2)
            return total
        bps = self.segs[p.index]
        for i, (o, _) in enumerate(bps):
            if o == p.offset:
                return self._slope(bps, i) - self._slope(bps, i - 1)
        # interior non-breakpoint: slopes cancel
        return 0

    @staticmethod
    def _slope(bps, i):
        (o1, v1), (o2, v2) = bps[i], bps[i + 1]
        return int((v2 - v1) / (o2 - o1))

    def div(self):
        """Divisor of orders; supported on vertices and interior breakpoints."""
        entries = {}
        for x in range(self.graph.model.vertex_count):
            c = self.ord_at(Point.vertex(x))
            if c:
                entries[Point.vertex(x)] = c
        for e, bps in enumerate(self.segs):
            for o, _ in bps[1:-1]:
                p = Point.interior(e, o)
                c = self.ord_at(p)
                if c:
                    entries[p] = c
        d = MetricDivisor.of(self.graph, entries)
        assert d.degree() == 0, "principal divisors have degree zero"
        return d


def ord_div_metric(graph, f):
    if f.graph != graph:
        raise SizeMismatch("function on a different metric graph")
    return f.div()


def rgd_member_metric(graph, divisor, f):
    return (f.div() + divisor).is_effective()


# -- model refinement ---------------------------------------------------------


class Refinement:
    """Subdivision of every edge into segments of length 1/q.

    Grid points (offsets with denominator dividing q) correspond to vertices
    of the refined model; divisors supported on the grid and PL functions
    with grid-only breakpoints transport back and forth exactly.  A vertex
    label g(x) on the refined model corresponds to the PL value g(x)/q, so
    slopes become plain value differences and div is preserved verbatim.
    """

    def __init__(self, base, q):
        q = int(q)
        if q < 1:
            raise NonIntegralRefinement("subdivision parameter must be >= 1")
        for e, length in enumerate(base.lengths):
            if (q * length).denominator != 1:
                raise NonIntegralRefinement(
                    f"edge {e}: q*length = {q * length} is not an integer")
        self.base = base
        self.q = q
        n = base.model.vertex_count
        edges = []
        labels = list(base.model.labels) if base.model.labels else [
            f"v{i}" for i in range(n)]
        self._grid = {}      # (edge, j) -> refined vertex id
        next_id = n
        for e, (u, v) in enumerate(base.model.edges):
            k = int(q * base.lengths[e])
            prev = u
            for j in range(1, k):
                labels.append(f"e{e}+{j}")
                self._grid[(e, j)] = next_id
                edges.append((prev, next_id))
                prev = next_id
                next_id += 1
            edges.append((prev, v))
            self._grid[(e, 0)] = u
            self._grid[(e, k)] = v
        self.graph = build_graph(next_id, edges, labels=labels)
        self._points = [Point.vertex(i) for i in range(n)]
        for e in range(base.model.edge_count):
            k = int(q * base.lengths[e])
            for j in range(1, k):
                self._points.append(Point.interior(e, Fraction(j, q)))
        assert len(self._points) == next_id

    def vertex_of_point(self, p):
        if p.is_vertex:
            return p.index
        j = p.offset * self.q
        if j.denominator != 1:
            raise NonIntegralRefinement(f"point {p} is off the 1/{self.q} grid")
        return self._grid[(p.index, int(j))]

    def point_of_vertex(self, i):
        return self._points[i]

    def divisor_to_graph(self, d):
        out = [0] * self.graph.vertex_count
        for p, c in d.items:
            out[self.vertex_of_point(p)] += c
        return Divisor(tuple(out))

    def divisor_from_graph(self, d):
        entries = {}
        for i, c in enumerate(d.coeffs):
            if c:
                entries[self.point_of_vertex(i)] = c
        return MetricDivisor.of(self.base, entries)

    def function_from_graph(self, g):
        """Vertex labels g on the refined model -> PL function with values g/q."""
        values = g.values if isinstance(g, RationalFunction) else g
        segs = []
        for e in range(self.base.model.edge_count):
            k = int(self.q * self.base.lengths[e])
            bps = [(Fraction(j, self.q), Fraction(values[self._grid[(e, j)]], self.q))
                   for j in range(k + 1)]
            segs.append(bps)
        return PLFunction(self.base, segs)

    def function_to_graph(self, f):
        """Inverse transport; requires grid-only breakpoints and values in Z/q."""
        values = [None] * self.graph.vertex_count
        for e, bps in enumerate(f.segs):
            for o, _ in bps[1:-1]:
                if (o * self.q).denominator != 1:
                    raise NonIntegralRefinement(
                        f"breakpoint at {o} on edge {e} is off the grid")
            k = int(self.q * self.base.lengths[e])
            for j in range(k + 1):
                val = f._eval_edge(e, Fraction(j, self.q)) * self.q
                if val.denominator != 1:
                    raise NonIntegralRefinement("values are not multiples of 1/q")
                values[self._grid[(e, j)]] = int(val)
        return RationalFunction(tuple(values))


def refine(graph, q):
    return Refinement(graph, q)


def _support_lcm(divisors):
    denoms = [1]
    for d in divisors:
        for p, _ in d.items:
            if not p.is_vertex:
                denoms.append(p.offset.denominator)
    return lcm(*denoms)


def linear_equiv_metric(graph, d1, d2):
    """Witness f with div(f) = D1 - D2, or None; decided on a refinement.

    With q a common denominator of the edge lengths and the support offsets,
    a witness has its divisor supported on the 1/q grid; its slope can then
    only change at grid points, so it restricts to a vertex labelling of the
    refined model, and conversely.  The metric question is therefore exactly
    the integer Laplacian solve on the refinement.
    """
    if d1.graph != graph or d2.graph != graph:
        raise SizeMismatch("divisors on a different metric graph")
    if d1.degree() != d2.degree():
        return None
    q = lcm(_support_lcm([d1, d2]), *(x.denominator for x in graph.lengths))
    ref = Refinement(graph, q)
    g = graph_linear_equiv(ref.graph, ref.divisor_to_graph(d1),
                           ref.divisor_to_graph(d2))
    if g is None:
        return None
    f = ref.function_from_graph(g).normalized()
    assert f.div() == d1 - d2
    return f


# -- metric subgraphs and chip firing ------------------------------------------


@dataclass(frozen=True)
class MetricSubgraph:
    """Compact subgraph: closed subintervals of edges plus isolated points.

    Canonical form: per-edge sorted disjoint closed intervals (singletons
    allowed only in the interior); an interval reaching an edge end promotes
    the endpoint into the vertex set.
    """

    graph: MetricGraph
    vertices: frozenset[int]
    intervals: tuple[tuple[int, tuple[tuple[Fraction, Fraction], ...]], ...]

    def __post_init__(self):
        per_edge = {}
        for e, ivs in self.intervals:
            per_edge.setdefault(e, []).extend(
                (_frac(a), _frac(b)) for a, b in ivs)
        verts = set(self.vertices)
        norm = {}
        for e, ivs in per_edge.items():
            length = self.graph.lengths[e]
            u, v = self.graph.model.edges[e]
            for a, b in ivs:
                if not (0 <= a <= b <= length):
                    raise InputError(f"interval [{a},{b}] outside edge {e}")
            ivs.sort()
            merged = []
            for a, b in ivs:
                if merged and a <= merged[-1][1]:
                    merged[-1] = (merged[-1][0], max(merged[-1][1], b))
                else:
                    merged.append((a, b))
            cleaned = []
            for a, b in merged:
                if a == 0:
                    verts.add(u)
                if b == length:
                    verts.add(v)
                if a == b and (a == 0 or b == length):
                    continue  # endpoint singleton became a vertex
                cleaned.append((a, b))
            if cleaned:
                norm[e] = tuple(cleaned)
        object.__setattr__(self, "vertices", frozenset(verts))
        object.__setattr__(self, "intervals",
                           tuple(sorted((e, ivs) for e, ivs in norm.items())))

    @staticmethod
    def build(graph, vertices=(), intervals=None):
        intervals = intervals or {}
        return MetricSubgraph(graph, frozenset(vertices),
                              tuple((e, tuple(ivs)) for e, ivs in intervals.items()))

    @staticmethod
    def from_point(graph, p):
        if p.is_vertex:
            return MetricSubgraph.build(graph, vertices={p.index})
        return MetricSubgraph.build(
            graph, intervals={p.index: [(p.offset, p.offset)]})

    @staticmethod
    def whole(graph):
        return MetricSubgraph.build(
            graph,
            vertices=range(graph.model.vertex_count),
            intervals={e: [(Fraction(0), graph.lengths[e])]
                       for e in range(graph.model.edge_count)})

    def edge_intervals(self, e):
        for ee, ivs in self.intervals:
            if ee == e:
                return ivs
        return ()

    def is_empty(self):
        return not self.vertices and not self.intervals

    def is_all(self):
        for e in range(self.graph.model.edge_count):
            ivs = self.edge_intervals(e)
            if len(ivs) != 1 or ivs[0] != (Fraction(0), self.graph.lengths[e]):
                return False
        return True

    def union(self, other):
        merged = {}
        for e in range(self.graph.model.edge_count):
            ivs = list(self.edge_intervals(e)) + list(other.edge_intervals(e))
            if ivs:
                merged[e] = ivs
        return MetricSubgraph.build(self.graph,
                                    vertices=self.vertices | other.vertices,
                                    intervals=merged)

    def contains_point(self, p):
        if p.is_vertex:
            return p.index in self.vertices
        return any(a <= p.offset <= b for a, b in self.edge_intervals(p.index))

    def cut_offsets(self, e):
        """Interior offsets where the subgraph structure changes on edge e."""
        out = set()
        for a, b in self.edge_intervals(e):
            for o in (a, b):
                if 0 < o < self.graph.lengths[e]:
                    out.add(o)
        return out


def components_of_complement(graph, points):
    """Closures of the connected components of the graph minus a point set."""
    cut_vertices = {p.index for p in points if p.is_vertex}
    cuts = {}
    for p in points:
        if not p.is_vertex:
            cuts.setdefault(p.index, set()).add(p.offset)

    segments = []  # (edge, a, b)
    for e in range(graph.model.edge_count):
        offs = sorted({Fraction(0), graph.lengths[e]} | cuts.get(e, set()))
        for a, b in zip(offs, offs[1:]):
            segments.append((e, a, b))

    parent = list(range(len(segments) + graph.model.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    nseg = len(segments)
    for i, (e, a, b) in enumerate(segments):
        u, v = graph.model.edges[e]
        if a == 0 and u not in cut_vertices:
            union(i, nseg + u)
        if b == graph.lengths[e] and v not in cut_vertices:
            union(i, nseg + v)

    groups = {}
    for i in range(nseg):
        groups.setdefault(find(i), []).append(i)

    out = []
    for members in groups.values():
        intervals = {}
        verts = set()
        for i in members:
            e, a, b = segments[i]
            intervals.setdefault(e, []).append((a, b))
        out.append(MetricSubgraph.build(graph, vertices=verts, intervals=intervals))
    return sorted(out, key=lambda s: (s.intervals, sorted(s.vertices)))


def _distance_network(graph, sub):
    """Cut the model at the subgraph's interior cut points.

    Returns (nodes, node_point, edges) where edges are
    (node_a, node_b, length, in_subgraph, edge, start_offset).
    """
    node_ids = {}
    node_point = []

    def node(key, point):
        if key not in node_ids:
            node_ids[key] = len(node_point)
            node_point.append(point)
        return node_ids[key]

    for x in range(graph.model.vertex_count):
        node(("v", x), Point.vertex(x))

    hedges = []
    for e in range(graph.model.edge_count):
        u, v = graph.model.edges[e]
        offs = sorted({Fraction(0), graph.lengths[e]} | sub.cut_offsets(e))
        ivs = sub.edge_intervals(e)
        for a, b in zip(offs, offs[1:]):
            na = node(("v", u) if a == 0 else ("e", e, a),
                      Point.vertex(u) if a == 0 else Point.interior(e, a))
            nb = node(("v", v) if b == graph.lengths[e] else ("e", e, b),
                      Point.vertex(v) if b == graph.lengths[e] else Point.interior(e, b))
            inside = any(ia <= a and b <= ib for ia, ib in ivs)
            hedges.append((na, nb, b - a, inside, e, a))
    return node_point, node_ids, hedges


def _subgraph_distances(graph, sub):
    """Exact distance from every network node to the subgraph (Dijkstra)."""
    node_point, node_ids, hedges = _distance_network(graph, sub)
    n = len(node_point)
    dist = [None] * n
    heap = []
    for i, p in enumerate(node_point):
        if sub.contains_point(p):
            dist[i] = Fraction(0)
            heapq.heappush(heap, (Fraction(0), i))
    adj = [[] for _ in range(n)]
    for na, nb, ln, inside, _, _ in hedges:
        w = Fraction(0) if inside else ln
        adj[na].append((nb, w))
        adj[nb].append((na, w))
    while heap:
        d, i = heapq.heappop(heap)
        if dist[i] is not None and d > dist[i]:
            continue
        for j, w in adj[i]:
            nd = d + w
            if dist[j] is None or nd < dist[j]:
                dist[j] = nd
                heapq.heappush(heap, (nd, j))
    if any(d is None for d in dist):
        raise EmptySubgraph("distance to an empty subgraph is undefined")
    return node_point, node_ids, hedges, dist


def cf_move(graph, sub, l):
    """The chip-firing function x -> -min(l, dist(x, subgraph)), exactly."""
    l = _frac(l)
    if l <= 0:
        raise InputError("firing distance must be positive")
    if sub.is_empty():
        raise EmptySubgraph("cannot fire an empty subgraph")
    if sub.is_all():
        raise EmptySubgraph("cannot fire the whole graph")
    node_point, node_ids, hedges, dist = _subgraph_distances(graph, sub)

    per_edge = {}
    for na, nb, ln, inside, e, start in hedges:
        pts = {Fraction(0): dist[na], ln: dist[nb]}
        if not inside:
            da, db = dist[na], dist[nb]
            # meeting point of the two linear fronts
            t_star = (db - da + ln) / 2
            if 0 < t_star < ln:
                pts[t_star] = da + t_star
            # crossings with the cap at level l on both rising fronts
            for t in (l - da, ln - (l - db)):
                if 0 < t < ln:
                    d_here = min(da + t, db + (ln - t))
                    pts[t] = d_here
        bset = per_edge.setdefault(e, {})
        for t, d in pts.items():
            bset[start + t] = -min(l, d)

    segs = []
    for e in range(graph.model.edge_count):
        bps = sorted(per_edge[e].items())
        segs.append(bps)
    return PLFunction(graph, segs)


def _sufficiently_small_l(graph, divisor, sub):
    """A firing distance below every relevant gap: min positive spacing of
    marked points (vertices, support, subgraph cut points) along each edge,
    divided by 3."""
    min_gap = None
    for e in range(graph.model.edge_count):
        marks = {Fraction(0), graph.lengths[e]}
        marks |= sub.cut_offsets(e)
        for p, _ in divisor.items:
            if not p.is_vertex and p.index == e:
                marks.add(p.offset)
        sm = sorted(marks)
        for a, b in zip(sm, sm[1:]):
            gap = b - a
            if gap > 0 and (min_gap is None or gap < min_gap):
                min_gap = gap
    assert min_gap is not None
    return min_gap / 3


def can_fire_metric(graph, divisor, sub, l=None):
    """Whether the subgraph fires on the divisor.

    l defaults to a provably small value (min marked gap over 3); any
    sufficiently small positive l gives the same answer, which tests assert
    by halving.
    """
    if sub.is_empty() or sub.is_all():
        raise EmptySubgraph("firing subgraph must be nonempty and proper")
    if l is None:
        l = _sufficiently_small_l(graph, divisor, sub)
    cf = cf_move(graph, sub, l)
    return (divisor + cf.div()).is_effective()


def metric_firing_subgraphs(graph, divisor, budget=DEFAULT_BUDGET):
    """All candidate subgraphs that fire on an effective divisor.

    A firing subgraph's boundary receives strictly negative order from the
    firing function, so the boundary must sit inside the divisor's support.
    Such subgraphs are exactly unions of closures of components of the
    complement of the support, possibly extended by isolated support points;
    the finite family is enumerated and filtered by can_fire.
    """
    if not divisor.is_effective():
        raise InputError("firing enumeration expects an effective divisor")
    support = sorted(divisor.support())
    comps = components_of_complement(graph, support)
    parts = [("c", c) for c in comps] + \
            [("p", MetricSubgraph.from_point(graph, p)) for p in support]
    budget.check_count(len(parts), budget.max_subgraph_parts, "subgraph parts")
    seen = set()
    out = []
    for mask in range(1, 1 << len(parts)):
        sub = None
        for i in range(len(parts)):
            if mask >> i & 1:
                sub = parts[i][1] if sub is None else sub.union(parts[i][1])
        key = (sub.vertices, sub.intervals)
        if key in seen:
            continue
        seen.add(key)
        if sub.is_empty() or sub.is_all():
            continue
        if can_fire_metric(graph, divisor, sub):
            out.append(sub)
    return sorted(out, key=lambda s: (len(s.intervals), s.intervals, sorted(s.vertices)))


def is_extremal_metric(graph, divisor, f, budget=DEFAULT_BUDGET):
    """No two proper firing subgraphs may cover the whole graph."""
    e = divisor + f.div()
    if not e.is_effective():
        raise NotMember("f is not in R(Gamma, D)")
    subs = metric_firing_subgraphs(graph, e, budget)
    for i, a in enumerate(subs):
        for b in subs[i + 1:]:
            if a.union(b).is_all():
                return False
    return True
