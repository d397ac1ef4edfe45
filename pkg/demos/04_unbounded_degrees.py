#!/usr/bin/env python3
"""No universal bound on generator degrees for canonical semi-rings.

G_n subdivides each edge of the theta graph into 2n-1 segments.  Its
canonical semi-ring needs a generator in degree n: the function cutting
out [p] + (2n-1)[r] from n*K is extremal, and an exhaustive search over
degree-exact products shows nothing below degree n reaches it.
"""

from tropdiv import build_gn, verify_gn

for n in (2, 3, 4):
    graph, roles = build_gn(n)
    print(f"G_{n}: {graph.vertex_count} vertices, {graph.edge_count} edges, "
          f"genus {graph.genus()}")
    print("  distinguished vertices:",
          {name: graph.label_of(v) for name, v in roles.items()})

    report = verify_gn(n)
    print(f"  witness found: {report['witness_found']}, "
          f"extremal: {report['extremal']}, "
          f"generated below degree {n}: {report['generated_below']}")
    print(f"  exhaustive search: {report['products_checked']} products over "
          f"{report['generators_below']} lower-degree elements")
    print("  per-degree solvability of kK ~ 2k[r]:", report["obstruction"])
print("ok")
