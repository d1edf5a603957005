"""Same pages over Q and over small prime fields."""

from bkcalc.models import ModelSpec
from bkcalc.specseq import e2_page

for field in ("q", 2, 3):
    page = e2_page(ModelSpec("links", 2, 5, field), 8)
    print(field, [(r.q, [(e.p, e.e2) for e in r.entries if e.e2]) for r in page.rows if any(e.e2 for e in r.entries)])
