"""Exact sparse linear algebra over Q and over prime fields F_l.

Matrices are stored as dictionaries of nonzero entries.  Rank over Q uses
fraction-free integer elimination (rows are kept primitive by dividing out
their content), rank over F_l uses ordinary modular elimination.  Pivots
are picked Markowitz-style: shortest active row first, and inside it the
column with the fewest remaining entries.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

__all__ = [
    "Field",
    "QQ",
    "GF",
    "SparseMatrix",
    "rank",
    "kernel_dim",
    "kernel_basis",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: characteristic 0 means Q, otherwise F_char."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"field characteristic must be 0 or a prime, got {self.char}")

    @property
    def is_rational(self) -> bool:
        return self.char == 0

    def element(self, x):
        """Canonical form of ``x``: a reduced Fraction/int over Q, 0..l-1 mod l."""
        if self.char == 0:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return int(x) % self.char

    def inv(self, x):
        if self.char == 0:
            return Fraction(1) / Fraction(x)
        return pow(int(x), -1, self.char)

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    @classmethod
    def parse(cls, text) -> "Field":
        """Accepts 'q', 'Q', 'QQ', 'rational', a prime, or 'F<prime>'/'GF<prime>'."""
        if isinstance(text, Field):
            return text
        if isinstance(text, int):
            return cls(text)
        s = str(text).strip().lower()
        if s in ("q", "qq", "rational", "rationals", "0"):
            return cls(0)
        for prefix in ("gf", "f"):
            if s.startswith(prefix) and s[len(prefix):].isdigit():
                return cls(int(s[len(prefix):]))
        if s.isdigit():
            return cls(int(s))
        raise ValueError(f"unrecognized field {text!r}")


QQ = Field(0)


def GF(l: int) -> Field:
    return Field(l)


class SparseMatrix:
    """Immutable sparse matrix with canonical nonzero entries."""

    __slots__ = ("nrows", "ncols", "field", "_entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] = (),
                 field: Field = QQ):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            v = field.element(v)
            if v:
                data[r, c] = v
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self._entries = data

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable], field: Field = QQ, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, entries, field)

    @classmethod
    def identity(cls, size: int, field: Field = QQ):
        return cls(size, size, {(i, i): 1 for i in range(size)}, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key):
        return self._entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self._entries == other._entries)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz}, field={self.field})"

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def rows(self) -> list[dict[int, object]]:
        out: list[dict[int, object]] = [{} for _ in range(self.nrows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows,
                            {(c, r): v for (r, c), v in self._entries.items()}, self.field)

    def is_zero(self) -> bool:
        return not self._entries

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field != other.field:
            raise ValueError("field mismatch")
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], object] = {}
        for (r, k), a in self._entries.items():
            for c, b in by_row.get(k, ()):
                acc[r, c] = acc.get((r, c), 0) + a * b
        return SparseMatrix(self.nrows, other.ncols, acc, self.field)

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Matrix times a sparse column vector given as {index: value}."""
        out: dict[int, object] = {}
        for (r, c), v in self._entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, 0) + v * x
        f = self.field
        return {r: f.element(v) for r, v in out.items() if f.element(v)}


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _integer_rows(M: SparseMatrix) -> list[dict[int, int]]:
    rows = M.rows()
    out = []
    for row in rows:
        if not row:
            out.append(row)
            continue
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append(_primitive({c: int(v * den) for c, v in row.items()}))
    return out


def rank(M: SparseMatrix) -> int:
    """Rank of ``M`` over its field."""
    if M.nnz == 0:
        return 0
    # eliminate along the shorter dimension's index structure
    if M.nrows > M.ncols:
        M = M.transpose()
    l = M.field.char
    rows = _integer_rows(M) if l == 0 else [{c: int(v) for c, v in r.items()} for r in M.rows()]
    rows = {i: r for i, r in enumerate(rows) if r}

    col_rows: dict[int, set[int]] = {}
    for i, r in rows.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)

    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    rk = 0
    while heap:
        length, i = heapq.heappop(heap)
        row = rows.get(i)
        if row is None or len(row) != length:
            continue
        del rows[i]
        pc = min(row, key=lambda c: (len(col_rows[c]), c))
        for c in row:
            col_rows[c].discard(i)
        rk += 1
        pv = row[pc]
        for j in list(col_rows[pc]):
            other = rows[j]
            a = other[pc]
            if l == 0:
                new: dict[int, int] = {c: v * pv for c, v in other.items()}
                for c, v in row.items():
                    w = new.get(c, 0) - a * v
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
                new = _primitive(new)
            else:
                factor = a * pow(pv, -1, l) % l
                new = dict(other)
                for c, v in row.items():
                    w = (new.get(c, 0) - factor * v) % l
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
            for c in other:
                if c not in new:
                    col_rows[c].discard(j)
            for c in new:
                if c not in other:
                    col_rows[c].add(j)
            if new:
                rows[j] = new
                heapq.heappush(heap, (len(new), j))
            else:
                del rows[j]
    return rk


def kernel_dim(M: SparseMatrix) -> int:
    return M.ncols - rank(M)


def kernel_basis(M: SparseMatrix) -> list[dict[int, object]]:
    """Basis of the right kernel, each vector as {column: value}.

    Uses reduced row echelon form with exact field arithmetic; intended for
    moderate sizes (it does not try to limit fill-in).
    """
    f = M.field
    pivots: dict[int, dict[int, object]] = {}  # pivot column -> normalized row
    for row in M.rows():
        r = {c: f.element(v) for c, v in row.items()}
        for pc, prow in pivots.items():
            a = r.get(pc)
            if a:
                for c, v in prow.items():
                    w = f.element(r.get(c, 0) - a * v)
                    if w:
                        r[c] = w
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pc = min(r)
        inv = f.inv(r[pc])
        r = {c: f.element(v * inv) for c, v in r.items()}
        for qc, qrow in pivots.items():
            a = qrow.get(pc)
            if a:
                for c, v in r.items():
                    w = f.element(qrow.get(c, 0) - a * v)
                    if w:
                        qrow[c] = w
                    else:
                        qrow.pop(c, None)
        pivots[pc] = r
    basis = []
    for free in range(M.ncols):
        if free in pivots:
            continue
        vec = {free: f.element(1)}
        for pc, prow in pivots.items():
            a = prow.get(free)
            if a:
                vec[pc] = f.element(-a)
        basis.append(vec)
    return basis
