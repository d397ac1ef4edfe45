#!/usr/bin/env python3
"""Finite generation of the graded semi-ring oplus_m R(G, mD).

The degree-m piece embeds as the height-m lattice points of a rational
cone; Gordan's construction yields a finite Hilbert basis, and every
element then factors as a tropical product of basis members (up to a
constant).  Tropical sums can shrink the minimal generating degrees
further, which the covering criterion in decompose() detects.
"""

from tropdiv import (Divisor, build_graph, canonical_divisor, certify_basis,
                     decompose, extreme_rays, graded_cone, hilbert_basis,
                     min_generator_degrees, rgd_enumerate)

theta = build_graph(2, [(0, 1), (0, 1), (0, 1)], labels=["p", "q"])
k = canonical_divisor(theta)

cone = graded_cone(theta, k)
print("cone constraints (rows of [L | D], plus height >= 0):", cone.rows)
print("extreme rays:", extreme_rays(cone))

basis = hilbert_basis(cone)
print("Hilbert basis elements (degree, values):",
      [(el.degree, el.function.values) for el in basis.elements])
print("generator degrees:", basis.degrees())

# certify: every element up to degree 8 is a product of basis members
certified = certify_basis(basis, 8)
print("elements certified per degree:", certified)

# the covering criterion: a degree-4 element factors through degree 3 + 1,
# but the degree-3 nonconstants cannot be reached from below
el4 = [el for el in rgd_enumerate(theta, 4 * k, degree=4)
       if el.function.values == (0, 1)][0]
cert = decompose(el4, basis)
print("degree-4 element generated by the basis:", cert.generated)

lower = []
for m in (1, 2):
    lower.extend(rgd_enumerate(theta, m * k, degree=m))
el3 = [el for el in rgd_enumerate(theta, 3 * k, degree=3)
       if el.function.values == (0, 1)][0]
print("degree-3 element generated below degree 3:",
      decompose(el3, lower).generated)

print("degrees carrying irreducible elements up to 6:",
      min_generator_degrees(theta, k, 6))

# a single edge with D = [p] is generated entirely in degree 1
path = build_graph(2, [(0, 1)], labels=["p", "q"])
print("single edge, D = [p]:",
      min_generator_degrees(path, Divisor((1, 0)), 4))
print("ok")
