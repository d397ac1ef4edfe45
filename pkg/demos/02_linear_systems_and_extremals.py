#!/usr/bin/env python3
"""The tropical semi-module R(G, D) and its extremals.

R(G, D) is the set of integer vertex functions f with div(f) + D effective.
It is closed under pointwise max (tropical sum) and constant shifts, and is
generated by its extremal elements: those that cannot be written as a max
of two strictly smaller members.
"""

from tropdiv import (RationalFunction, build_graph, can_fire,
                     canonical_divisor, extremals, firing_subsets,
                     is_extremal, odot, oplus, ord_and_div, rgd_enumerate,
                     rgd_member, scale)

theta = build_graph(2, [(0, 1), (0, 1), (0, 1)], labels=["p", "q"])
k = canonical_divisor(theta)

# enumerate R(G, mK) modulo constants for increasing m
for m in (1, 2, 3):
    elements = rgd_enumerate(theta, m * k, degree=m)
    print(f"R(theta, {m}K) mod constants:",
          [el.function.values for el in elements])

# tropical algebra: max and sum stay inside the graded pieces
f = RationalFunction((0, 1))
g = RationalFunction((1, 0))
print("f (+) g =", oplus(f, g).values, "member of R(3K):",
      rgd_member(theta, 3 * k, oplus(f, g)))
print("f (.) g =", odot(f, g).values, "member of R(6K):",
      rgd_member(theta, 6 * k, odot(f, g)))
print("shifting is a unit action:", scale(5, f).normalized() == f)

# chip firing: a vertex subset fires when every member keeps enough chips
# to cover its edges leaving the subset
e = 3 * k + ord_and_div(theta, f)
print("divisor 3K + div(f):", e.coeffs)                       # 6 chips at p
print("can {p} fire on it?", can_fire(theta, e, frozenset({0})))
print("all firing subsets:", firing_subsets(theta, e))

# extremality: no two proper firing subsets cover all vertices; for the
# constant, {p} and {q} both fire on 3K and cover, so it is a proper max
print("f extremal?", is_extremal(theta, 3 * k, f))
print("constant extremal in R(3K)?",
      is_extremal(theta, 3 * k, RationalFunction((0, 0))))
print("oplus(f, g) recovers the constant shape:",
      oplus(f, g).values)
print("extremals of R(theta, 3K):",
      [el.function.values for el in extremals(theta, 3 * k, degree=3)])
print("ok")
