"""Normalized E1 page, the d1 differential and the E2 page.

For a fixed internal degree q the row E1^{-p,q}, p = 0, 1, ..., is a finite
cochain complex (diagrams of weight k touch at most 2k columns, braid
tensors of weight k have at most k slots), so every row is computed
exactly and completely.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import connest
from .exactla import SparseMatrix, rank
from .models import ModelSpec, _coface_key, normalized_basis

__all__ = [
    "e1_dims",
    "d1_matrix",
    "e2_row",
    "e2_page",
    "PageEntry",
    "RowReport",
    "PageReport",
    "BasisLimitExceeded",
    "WORKERS_ENV",
]

WORKERS_ENV = "BKCALC_THREADS"


class BasisLimitExceeded(RuntimeError):
    def __init__(self, p: int, q: int, size: int, limit: int):
        super().__init__(f"normalized basis at (p={p}, q={q}) has {size} elements, limit {limit}")
        self.p, self.q, self.size, self.limit = p, q, size, limit


def e1_dims(spec: ModelSpec, p: int, q: int) -> int:
    return len(normalized_basis(spec, p, q))


def _d1_columns(spec: ModelSpec, p: int, q: int, src: list, tgt: list) -> dict:
    index = {k: r for r, k in enumerate(tgt)}
    entries: dict[tuple[int, int], int] = {}
    for col, key in enumerate(src):
        acc: dict = {}
        for i in range(p + 1):
            img = _coface_key(spec, p, i, key)
            sign = -1 if i % 2 else 1
            for k2, c in img.items():
                r = index.get(k2)
                if r is None:
                    continue  # degenerate diagram: zero in the normalized quotient
                acc[r] = acc.get(r, 0) + sign * c
        for r, v in acc.items():
            if v:
                entries[r, col] = v
    return entries


def d1_matrix(spec: ModelSpec, p: int, q: int) -> SparseMatrix:
    """Matrix of sum_i (-1)^i (d^i)^* from normalized level p to level p-1.

    Columns follow normalized_basis(spec, p, q), rows normalized_basis(spec, p-1, q).
    """
    if p < 1:
        raise ValueError("d1 is defined for p >= 1")
    src = normalized_basis(spec, p, q)
    tgt = normalized_basis(spec, p - 1, q)
    return SparseMatrix(len(tgt), len(src), _d1_columns(spec, p, q, src, tgt), spec.field)


@dataclass
class PageEntry:
    p: int
    e1: int | None
    e2: int | None
    region: str = "support"


@dataclass
class RowReport:
    q: int
    entries: list[PageEntry]
    euler_e1: int | None
    euler_e2: int | None
    d1_ranks: dict[int, int] = field(default_factory=dict)
    d1_squared_zero: bool | None = None
    truncated: bool = False
    seconds: float = 0.0

    @property
    def euler_ok(self) -> bool | None:
        if self.euler_e1 is None or self.euler_e2 is None:
            return None
        return self.euler_e1 == self.euler_e2

    def e2(self, p: int) -> int:
        for e in self.entries:
            if e.p == p:
                return e.e2
        return 0

    def e1(self, p: int) -> int:
        for e in self.entries:
            if e.p == p:
                return e.e1
        return 0


@dataclass
class PageReport:
    spec: ModelSpec
    q_max: int
    rows: list[RowReport]
    label: str
    vanishing_ok: bool | None
    timing: dict = field(default_factory=dict)

    @property
    def truncated(self) -> bool:
        return any(r.truncated for r in self.rows)

    @property
    def d1_squared_zero(self) -> bool:
        return all(r.d1_squared_zero is not False for r in self.rows)

    @property
    def euler_ok(self) -> bool:
        return all(r.euler_ok is not False for r in self.rows)

    def row(self, q: int) -> RowReport:
        for r in self.rows:
            if r.q == q:
                return r
        raise KeyError(q)

    def e1(self, p: int, q: int) -> int:
        return self.row(q).e1(p)

    def e2(self, p: int, q: int) -> int:
        return self.row(q).e2(p)

    def to_dict(self) -> dict:
        """Canonical body: no timing, stable ordering."""
        return {
            "spec": {"family": self.spec.family, "m": self.spec.m, "n": self.spec.n,
                     "field": str(self.spec.field)},
            "q_max": self.q_max,
            "label": self.label,
            "rows": [
                {
                    "q": r.q,
                    "entries": [{"p": e.p, "e1": e.e1, "e2": e.e2, "region": e.region} for e in r.entries],
                    "euler_e1": r.euler_e1,
                    "euler_e2": r.euler_e2,
                    "d1_ranks": {str(p): v for p, v in sorted(r.d1_ranks.items())},
                    "d1_squared_zero": r.d1_squared_zero,
                    "truncated": r.truncated,
                }
                for r in self.rows
            ],
        }


def _region(spec: ModelSpec, p: int, q: int) -> str:
    if spec.family == "braids" or p == 0:
        return "support"
    lo, hi = connest.vanishing_region(spec.m, p, spec.n)
    if q < lo:
        return "below_lower_line"
    if q > hi:
        return "above_upper_line"
    if q == lo or q == hi:
        return "boundary"
    return "support"


def e2_row(spec: ModelSpec, q: int, max_basis: int | None = None, check_d1sq: bool = True) -> RowReport:
    """One complete row q of the E1 and E2 pages."""
    t0 = time.perf_counter()
    p_top = spec.max_columns(q)
    try:
        bases = {}
        for p in range(p_top + 2):
            b = normalized_basis(spec, p, q)
            if max_basis is not None and len(b) > max_basis:
                raise BasisLimitExceeded(p, q, len(b), max_basis)
            bases[p] = b
    except BasisLimitExceeded:
        entries = [PageEntry(p, None, None, _region(spec, p, q)) for p in range(p_top + 1)]
        return RowReport(q, entries, None, None, truncated=True, seconds=time.perf_counter() - t0)

    mats: dict[int, SparseMatrix] = {}
    ranks: dict[int, int] = {0: 0}
    for p in range(1, p_top + 2):
        if not bases[p] or not bases[p - 1]:
            ranks[p] = 0
            mats[p] = SparseMatrix(len(bases[p - 1]), len(bases[p]), {}, spec.field)
            continue
        M = SparseMatrix(len(bases[p - 1]), len(bases[p]),
                         _d1_columns(spec, p, q, bases[p], bases[p - 1]), spec.field)
        mats[p] = M
        ranks[p] = rank(M)

    d1sq = None
    if check_d1sq:
        d1sq = all((mats[p] @ mats[p + 1]).is_zero() for p in range(1, p_top + 1))

    entries = []
    for p in range(p_top + 1):
        e1 = len(bases[p])
        e2 = e1 - ranks[p] - ranks[p + 1]
        entries.append(PageEntry(p, e1, e2, _region(spec, p, q)))
    euler1 = sum((-1) ** e.p * e.e1 for e in entries)
    euler2 = sum((-1) ** e.p * e.e2 for e in entries)
    return RowReport(q, entries, euler1, euler2,
                     d1_ranks={p: r for p, r in ranks.items() if p >= 1 and p <= p_top},
                     d1_squared_zero=d1sq, seconds=time.perf_counter() - t0)


def _row_job(args):
    return e2_row(*args)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def e2_page(spec: ModelSpec, q_max: int, max_basis: int | None = None,
            check_d1sq: bool = True, workers: int | None = None) -> PageReport:
    """E1 and E2 dimensions for every row q <= q_max.

    Rows are independent; with ``workers`` > 1 (or the BKCALC_THREADS
    environment variable) they are computed in separate processes.
    """
    if q_max < 0:
        raise ValueError("q_max must be nonnegative")
    t0 = time.perf_counter()
    qs = list(range(q_max + 1))
    workers = workers if workers is not None else _workers()
    jobs = [(spec, q, max_basis, check_d1sq) for q in qs]
    if workers > 1 and len(qs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(j) for j in jobs]

    vanishing_ok = None
    if spec.family != "braids":
        vanishing_ok = all(
            e.e1 == 0 for r in rows for e in r.entries
            if e.e1 is not None and e.region in ("below_lower_line", "above_upper_line")
        )
    timing = {"total_seconds": time.perf_counter() - t0,
              "row_seconds": {r.q: r.seconds for r in rows}}
    return PageReport(spec, q_max, rows, connest.page_label(spec.family, spec.n), vanishing_ok, timing)
