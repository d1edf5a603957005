"""E1 and E2 pages for long knots and two-strand string links in R^4."""

from bkcalc.connest import convergence_verdict, vanishing_region
from bkcalc.models import ModelSpec, format_basis_element, normalized_basis
from bkcalc.specseq import d1_matrix, e2_page

knots = ModelSpec("knots", n=4)
links = ModelSpec("links", m=2, n=4)

# the first class: a single chord spanning two columns
print([format_basis_element(knots, 2, k) for k in normalized_basis(knots, 2, 3)])

# two strands: four chords touch both columns, and d1 has rank one
print([format_basis_element(links, 2, k) for k in normalized_basis(links, 2, 3)])
print(d1_matrix(links, 2, 3).to_dense())

for spec, q_max in [(knots, 9), (links, 6)]:
    page = e2_page(spec, q_max)
    print(f"\n{spec.family} m={spec.m} n={spec.n}: {page.label}")
    for row in page.rows:
        nz = [(e.p, e.e1, e.e2) for e in row.entries if e.e1]
        if nz:
            print(f"  q={row.q}: (p, E1, E2) = {nz}   chi = {row.euler_e2}")
    print("  d1 squares to zero:", page.d1_squared_zero)

# every E1 entry sits between the two vanishing lines
print("\nwindow for m=2, p=2, n=4:", vanishing_region(2, 2, 4))
print(convergence_verdict("links", 4).to_dict())
print(convergence_verdict("links", 3).to_dict())
