"""Braid pages against the loop space of a configuration space.

For m points in R^(n-1) the loop space has cohomology with Poincare series
prod_{j<m} 1/(1 - j t^(n-2)).  The braid pages should reproduce it on the
diagonal q = p(n-2) and vanish elsewhere.
"""

from bkcalc.models import ModelSpec
from bkcalc.specseq import e2_page

for m, n, q_max in [(2, 6, 12), (3, 5, 12), (4, 5, 9)]:
    spec = ModelSpec("braids", m, n)
    page = e2_page(spec, q_max)
    d = spec.gen_degree
    diag = [page.e2(q // d, q) for q in range(d, q_max + 1, d)]
    off = sum(e.e2 for r in page.rows for e in r.entries if r.q != d * e.p)
    print(f"m={m} n={n}: diagonal E2 = {diag}, off-diagonal total = {off}")
