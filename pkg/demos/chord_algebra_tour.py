"""A walk through the chord algebra: bases, straightening, Hilbert series."""

from bkcalc.oscore import (build_graph, chromatic_poly, complete_graph, enumerate_nbc,
                           hilbert_series, straighten)

# four points in R^4: generators e_uv of degree 3, anticommuting
K4 = complete_graph(4)
print("weight-2 basis of K4:", enumerate_nbc(K4, 2))

# the triangle relation rewrites e13*e23 in terms of basis monomials
print("e13 e23 =", straighten(K4, [(1, 3), (2, 3)], n=4))
print("e13 e23 in R^3 =", straighten(K4, [(1, 3), (2, 3)], n=3))  # commuting regime
print("e12 e12 =", straighten(K4, [(1, 2), (1, 2)], n=4))

# Poincare polynomial (1+t^3)(1+2t^3)(1+3t^3)
print("Hilbert series of K4 for n=4:", hilbert_series(K4, 4))

# two strands with two points each, only inter-strand chords: K_{2,2}
g = build_graph("hlinks", 2, 2)
print("K_{2,2} edges:", g.edges)
print("chromatic polynomial (low degree first):", chromatic_poly(g))
print("nbc counts by weight:", [len(enumerate_nbc(g, k)) for k in range(4)])

# a 4-cycle is dependent, so the product vanishes; three of its edges do not
print("1-3-2-4-1 cycle:", straighten(g, [(1, 3), (2, 3), (2, 4), (1, 4)], n=4))
print("path 3-2-4-1:", straighten(g, [(2, 3), (2, 4), (1, 4)], n=4))
