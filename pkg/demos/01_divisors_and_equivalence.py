#!/usr/bin/env python3
"""Divisors on finite multigraphs and exact linear equivalence.

The running example is the theta graph: two vertices p, q joined by three
parallel edges.  Every computation is exact integer arithmetic.
"""

from tropdiv import (Divisor, RationalFunction, build_graph,
                     canonical_divisor, genus, linear_equiv, ord_and_div)

theta = build_graph(2, [(0, 1), (0, 1), (0, 1)], labels=["p", "q"])
print("theta graph:", theta.vertex_count, "vertices,", theta.edge_count, "edges")
print("genus (first Betti number):", genus(theta))

# canonical divisor: val(x) - 2 at each vertex
k = canonical_divisor(theta)
print("K =", dict(enumerate(k.coeffs)), "of degree", k.degree())
assert k.degree() == 2 * genus(theta) - 2

# a rational function is an integer vertex labelling; its divisor collects
# the sums of differences along edges and always has degree zero
f = RationalFunction((0, -1))
print("div(f) for f = (0, -1):", ord_and_div(theta, f).coeffs)

# linear equivalence D ~ D' asks for f with div(f) = D - D'; this is an
# integer linear system for the Laplacian, decided by Smith normal form
d1 = 2 * k                       # 2[p] + 2[q]
d2 = Divisor((1, 3))             # [p] + 3[q]
print("2K ~ [p]+3[q]?", linear_equiv(theta, d1, d2) is not None)

# the same question with matching divisor classes has an explicit witness
g2_edges = [(0, 2), (2, 3), (3, 1),
            (0, 4), (4, 5), (5, 1),
            (0, 6), (6, 7), (7, 1)]
g2 = build_graph(8, g2_edges, labels=["p", "q"] + [f"s{i}" for i in range(6)])
k2 = canonical_divisor(g2)
target = Divisor.of(8, {0: 1, 3: 3})      # [p] + 3[r], r two steps from p
w = linear_equiv(g2, target, 2 * k2)
print("on the 3-subdivided theta, 2K ~ [p]+3[r] with witness", w.values)
assert ord_and_div(g2, w) == target - 2 * k2
print("ok")
