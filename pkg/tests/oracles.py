"""Independent brute-force oracles used to pin expected values.

These deliberately avoid the library's enumeration and search strategies:
membership is recomputed from the definition and searches are plain scans,
so agreement with the fast paths is meaningful.
"""

from __future__ import annotations

import itertools

import numpy as np

from tropdiv.graphs import RationalFunction
from tropdiv.linear_systems import rgd_member


def sufficient_box(graph, divisor):
    """Provable value range for min-0 members of R(G, D).

    Sort the values of a member f.  For a gap between consecutive distinct
    values, sum the order constraints over the low side A: internal edges
    cancel, so the crossing edges contribute at least (gap) each, while the
    total is at most the positive part of D restricted outside A.  Hence
    every gap is at most d_plus = sum of positive coefficients of D, and the
    full spread is at most (n - 1) * d_plus.
    """
    dplus = sum(max(c, 0) for c in divisor.coeffs)
    return (graph.vertex_count - 1) * dplus


def rgd_box_enumerate(graph, divisor):
    """Scan every min-0 vector in the sufficient box; keep the members."""
    n = graph.vertex_count
    if divisor.degree() < 0:
        return frozenset()
    spread = sufficient_box(graph, divisor)
    out = set()
    for values in itertools.product(range(spread + 1), repeat=n):
        if min(values) != 0:
            continue
        f = RationalFunction(values)
        if rgd_member(graph, divisor, f):
            out.add(values)
    return frozenset(out)


def rgd_box_enumerate_fast(graph, divisor):
    """Same box scan, vectorised (still definition-only membership)."""
    n = graph.vertex_count
    if divisor.degree() < 0:
        return frozenset()
    spread = sufficient_box(graph, divisor)
    axes = [np.arange(spread + 1, dtype=np.int64)] * n
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    grid = grid[grid.min(axis=1) == 0]
    lap = np.array([list(r) for r in graph.laplacian], dtype=np.int64)
    div_plus = grid @ lap.T + np.array(divisor.coeffs, dtype=np.int64)
    ok = (div_plus >= 0).all(axis=1)
    return frozenset(tuple(int(x) for x in row) for row in grid[ok])


def all_firing_subsets(graph, divisor):
    """Every proper nonempty subset whose firing keeps the divisor effective."""
    from tropdiv.linear_systems import can_fire
    n = graph.vertex_count
    out = []
    for r in range(1, n):
        for combo in itertools.combinations(range(n), r):
            if can_fire(graph, divisor, frozenset(combo)):
                out.append(frozenset(combo))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def connected_multigraphs(max_vertices, max_edges):
    """All connected multigraphs (loops allowed) up to isomorphism."""
    from tropdiv.graphs import build_graph
    from tropdiv.errors import Disconnected
    seen = set()
    graphs = [build_graph(1, [])]  # the edgeless point
    for n in range(1, max_vertices + 1):
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        for e in range(1, max_edges + 1):
            for combo in itertools.combinations_with_replacement(slots, e):
                canon = min(
                    tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in combo))
                    for p in itertools.permutations(range(n)))
                if (n, canon) in seen:
                    continue
                seen.add((n, canon))
                try:
                    graphs.append(build_graph(n, list(combo)))
                except Disconnected:
                    pass
    return graphs
