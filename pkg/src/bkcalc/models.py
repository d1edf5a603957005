"""Cohomology-level models of the diagonal cosimplicial spaces.

Level p of each family and its cohomology:

* links (knots = one strand): p points on each of m strands, all pairwise
  distinct; H^* is generated by chords between any two grid points;
* hlinks: the same grid, but only points on different strands have to be
  distinct, so chords always join two strands;
* braids: p independent copies of the configuration space of m points in
  R^(n-1); H^* is the p-fold tensor power of its chord algebra.

Grid points are numbered strand-major, index(a, l) = (a-1)*p + l.  Classes
at a level are sparse dicts with integer or field coefficients, keyed by nbc
monomials (links/hlinks) or by p-tuples of nbc monomials (braids).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Mapping

from .exactla import QQ, Field
from .oscore import (
    Graph,
    Monomial,
    OSAlgebra,
    build_graph,
    complete_graph,
    enumerate_nbc,
    format_monomial,
)

__all__ = [
    "ModelSpec",
    "GridIndex",
    "LevelClass",
    "grid_index",
    "grid_point",
    "level_graph",
    "normalized_basis",
    "full_basis",
    "coface_pullback",
    "codegeneracy_pullback",
    "is_normalized",
    "ModelOperators",
    "format_basis_element",
]

FAMILIES = ("knots", "links", "hlinks", "braids")


@dataclass(frozen=True)
class ModelSpec:
    family: str
    m: int = 1
    n: int = 4
    field: Field = QQ

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.m < 1:
            raise ValueError("strand count m must be at least 1")
        if self.family == "knots" and self.m != 1:
            raise ValueError("knots are the one-strand case of links (m = 1)")
        if self.family == "braids":
            if self.n < 4:
                raise ValueError("braids need n >= 4 so generators have degree n-2 >= 2")
        elif self.n < 3:
            raise ValueError("ambient dimension n must be at least 3")
        object.__setattr__(self, "field", Field.parse(self.field))

    @property
    def kind(self) -> str:
        """Family with the knot alias resolved."""
        return "links" if self.family == "knots" else self.family

    @property
    def gen_degree(self) -> int:
        return self.n - 2 if self.family == "braids" else self.n - 1

    @property
    def config_dim(self) -> int:
        """Dimension of the Euclidean space the configurations live in."""
        return self.n - 1 if self.family == "braids" else self.n

    def max_columns(self, q: int) -> int:
        """Largest p with a possibly nonzero normalized group in degree q."""
        if q % self.gen_degree:
            return 0
        k = q // self.gen_degree
        return k if self.family == "braids" else 2 * k


@dataclass(frozen=True)
class GridIndex:
    strand: int
    column: int


def grid_index(m: int, p: int, a: int, l: int) -> int:
    if not (1 <= a <= m and 1 <= l <= p):
        raise ValueError(f"grid point ({a},{l}) outside {m} strands x {p} columns")
    return (a - 1) * p + l


def grid_point(m: int, p: int, x: int) -> GridIndex:
    if not 1 <= x <= m * p:
        raise ValueError(f"index {x} outside 1..{m * p}")
    a, l = divmod(x - 1, p)
    return GridIndex(a + 1, l + 1)


_lock = threading.Lock()


@lru_cache(maxsize=None)
def _algebra(kind: str, m: int, p: int, n: int) -> OSAlgebra:
    return OSAlgebra(build_graph(kind, m, p), n)


def level_algebra(spec: ModelSpec, p: int) -> OSAlgebra:
    """Chord algebra of level p (for braids: of one tensor factor)."""
    with _lock:
        if spec.family == "braids":
            return _algebra("braids", spec.m, 1, spec.config_dim)
        return _algebra(spec.kind, spec.m, p, spec.n)


def level_graph(spec: ModelSpec, p: int) -> Graph:
    return level_algebra(spec, p).graph


def _columns(m: int, p: int) -> list[list[int]]:
    return [[(a - 1) * p + l for a in range(1, m + 1)] for l in range(1, p + 1)]


@lru_cache(maxsize=None)
def _normalized(kind: str, m: int, n: int, p: int, q: int) -> tuple:
    gd = n - 2 if kind == "braids" else n - 1
    if q < 0 or q % gd:
        return ()
    k = q // gd
    if p == 0:
        return ((),) if k == 0 else ()
    if kind == "braids":
        g = complete_graph(m)
        by_weight = {w: enumerate_nbc(g, w) for w in range(1, k + 1)}
        out: list[tuple] = []

        def rec(slots, left, remaining):
            if remaining == 0:
                if left == 0:
                    out.append(tuple(slots))
                return
            for w in range(1, left - remaining + 2):
                for mono in by_weight.get(w, ()):
                    rec(slots + [mono], left - w, remaining - 1)

        rec([], k, p)
        return tuple(out)
    g = build_graph(kind, m, p)
    return tuple(enumerate_nbc(g, k, must_touch=_columns(m, p)))


@lru_cache(maxsize=None)
def _full(kind: str, m: int, n: int, p: int, q: int) -> tuple:
    gd = n - 2 if kind == "braids" else n - 1
    if q < 0 or q % gd:
        return ()
    k = q // gd
    if kind == "braids":
        g = complete_graph(m)
        by_weight = {w: enumerate_nbc(g, w) for w in range(0, k + 1)}
        out: list[tuple] = []

        def rec(slots, left, remaining):
            if remaining == 0:
                if left == 0:
                    out.append(tuple(slots))
                return
            for w in range(0, left + 1):
                for mono in by_weight.get(w, ()):
                    rec(slots + [mono], left - w, remaining - 1)

        rec([], k, p)
        return tuple(out)
    return tuple(enumerate_nbc(build_graph(kind, m, p), k))


def normalized_basis(spec: ModelSpec, p: int, q: int) -> list:
    """Basis of the normalized cohomology of level p in degree q.

    links/hlinks: nbc diagrams with a chord endpoint in every column;
    braids: tensors whose slots all have positive degree.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    with _lock:
        return list(_normalized(spec.kind, spec.m, spec.n, p, q))


def full_basis(spec: ModelSpec, p: int, q: int) -> list:
    """Basis of the whole degree-q cohomology of level p."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    with _lock:
        return list(_full(spec.kind, spec.m, spec.n, p, q))


def is_normalized(spec: ModelSpec, p: int, key) -> bool:
    if spec.family == "braids":
        return all(len(slot) > 0 for slot in key)
    touched = {(x - 1) % p for e in key for x in e} if p else set()
    return len(touched) == p


@dataclass(frozen=True)
class LevelClass:
    """A cohomology class of one level, as {basis key: field scalar}."""

    spec: ModelSpec
    p: int
    terms: Mapping[Hashable, object] = field(default_factory=dict)

    def __post_init__(self):
        f = self.spec.field
        clean = {}
        for k, c in self.terms.items():
            c = f.element(c)
            if c:
                clean[k] = c
        object.__setattr__(self, "terms", clean)

    @property
    def degree(self) -> int | None:
        if not self.terms:
            return None
        key = next(iter(self.terms))
        w = sum(len(s) for s in key) if self.spec.family == "braids" else len(key)
        return w * self.spec.gen_degree

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{format_basis_element(self.spec, self.p, k)}]" for k, c in self.terms.items())


def format_basis_element(spec: ModelSpec, p: int, key) -> str:
    """Human-readable chord diagram, e.g. '(1,1)-(2,2)'."""
    if spec.family == "braids":
        return " | ".join(format_monomial(s) for s in key) if key else "1"
    return format_monomial(key, lambda x: tuple(grid_point(spec.m, p, x).__dict__.values()))


def _add(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _coface_key(spec: ModelSpec, p: int, i: int, key) -> dict:
    """Pullback of one basis element along d^i : level p-1 -> level p."""
    if spec.family == "braids":
        if i == 0:
            return {key[1:]: 1} if not key[0] else {}
        if i == p:
            return {key[:-1]: 1} if not key[-1] else {}
        alg = level_algebra(spec, 1)
        out: dict = {}
        for mono, c in alg.multiply(key[i - 1], key[i]).items():
            out[key[:i - 1] + (mono,) + key[i + 1:]] = c
        return out
    m = spec.m
    word = []
    for u, v in key:
        a, l = divmod(u - 1, p)
        b, k = divmod(v - 1, p)
        l += 1
        k += 1
        if i == 0:
            if l == 1 or k == 1:
                return {}
            l, k = l - 1, k - 1
        elif i == p:
            if l == p or k == p:
                return {}
        else:
            l = l if l <= i else l - 1
            k = k if k <= i else k - 1
            if a == b and l == k:
                # both endpoints become the doubled point
                return {}
        word.append((a * (p - 1) + l, b * (p - 1) + k))
    return level_algebra(spec, p - 1).straighten_word(word)


def _codegeneracy_key(spec: ModelSpec, p: int, i: int, key) -> dict:
    """Pullback of one basis element along s^i : level p+1 -> level p."""
    if spec.family == "braids":
        return {key[:i] + ((),) + key[i:]: 1}
    word = []
    for u, v in key:
        a, l = divmod(u - 1, p)
        b, k = divmod(v - 1, p)
        l += 1
        k += 1
        l = l if l <= i else l + 1
        k = k if k <= i else k + 1
        word.append((a * (p + 1) + l, b * (p + 1) + k))
    return level_algebra(spec, p + 1).straighten_word(word)


def _check_level(spec: ModelSpec, cls, p: int):
    if isinstance(cls, LevelClass):
        if cls.spec != spec or cls.p != p:
            raise ValueError(f"class lives at level {cls.p} of {cls.spec}, expected level {p} of {spec}")
        return cls.terms
    return cls


def coface_pullback(spec: ModelSpec, p: int, i: int, cls) -> LevelClass:
    """(d^i)^* from level p to level p-1, 0 <= i <= p."""
    if p < 1 or not 0 <= i <= p:
        raise ValueError(f"coface index {i} out of range for level {p}")
    out: dict = {}
    for key, c in _check_level(spec, cls, p).items():
        for k2, d in _coface_key(spec, p, i, key).items():
            _add(out, k2, c * d)
    return LevelClass(spec, p - 1, out)


def codegeneracy_pullback(spec: ModelSpec, p: int, i: int, cls) -> LevelClass:
    """(s^i)^* from level p to level p+1, 0 <= i <= p."""
    if p < 0 or not 0 <= i <= p:
        raise ValueError(f"codegeneracy index {i} out of range for level {p}")
    out: dict = {}
    for key, c in _check_level(spec, cls, p).items():
        for k2, d in _codegeneracy_key(spec, p, i, key).items():
            _add(out, k2, c * d)
    return LevelClass(spec, p + 1, out)


class ModelOperators:
    """OperatorFamily view of a model on full cohomology, degrees <= q_max."""

    def __init__(self, spec: ModelSpec, q_max: int):
        self.spec = spec
        self.q_max = q_max

    def basis(self, p: int) -> list:
        out = []
        for q in range(0, self.q_max + 1, self.spec.gen_degree):
            out.extend(full_basis(self.spec, p, q))
        return out

    def coface(self, p: int, i: int, vec) -> dict:
        return dict(coface_pullback(self.spec, p, i, dict(vec)).terms)

    def codegeneracy(self, p: int, i: int, vec) -> dict:
        return dict(codegeneracy_pullback(self.spec, p, i, dict(vec)).terms)
