"""Chord-diagram presentation of configuration-space cohomology.

The cohomology of the complement of a graphic arrangement in (R^n)^v is
generated by classes e_uv, one per edge of the graph, in degree n-1.  A
product of generators is a *monomial*; its normal form is a signed
combination of no-broken-circuit (nbc) monomials.

Conventions used throughout:

* vertices are the integers 1..v; an edge is stored as (u, v) with u < v;
* edges are ordered by the key (max endpoint, min endpoint);
* a monomial is a tuple of edges sorted by that key;
* generators anticommute when n is even and commute when n is odd, and
  every generator squares to zero;
* e_vu = (-1)^n e_uv;
* for a cycle w_1 -> w_2 -> ... -> w_r -> w_1 with oriented generators
  g_s = e_{w_s w_{s+1}} the circuit relation is
  sum_t sigma_t * prod_{s != t} g_s = 0 where sigma_t = (-1)^(t-1) in the
  anticommuting case and sigma_t = 1 in the commuting case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactla import QQ, Field

__all__ = [
    "Graph",
    "Monomial",
    "OSAlgebra",
    "CochainClass",
    "edge_key",
    "build_graph",
    "complete_graph",
    "complete_multipartite_graph",
    "enumerate_nbc",
    "is_nbc",
    "straighten",
    "hilbert_series",
    "nbc_counts",
    "chromatic_poly",
    "nbc_counts_from_chromatic",
    "format_monomial",
]

Edge = tuple[int, int]
Monomial = tuple[Edge, ...]

FAMILIES = ("knots", "links", "hlinks", "braids")


def edge_key(e: Edge) -> tuple[int, int]:
    return (e[1], e[0])


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 1..vertex_count.

    ``part_of[v-1]`` is the part label of vertex v; edges never join two
    vertices with the same label when the graph is multipartite.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    part_of: tuple[int, ...] = ()
    _edge_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (1 <= u < v <= self.vertex_count):
                raise ValueError(f"edge {(u, v)} must satisfy 1 <= u < v <= {self.vertex_count}")
            if (u, v) in seen:
                raise ValueError(f"repeated edge {(u, v)}")
            seen.add((u, v))
        if self.part_of and len(self.part_of) != self.vertex_count:
            raise ValueError("part_of must label every vertex")
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=edge_key)))
        if not self.part_of:
            object.__setattr__(self, "part_of", tuple(range(1, self.vertex_count + 1)))
        object.__setattr__(self, "_edge_set", frozenset(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def components(self) -> list[set[int]]:
        parent = list(range(self.vertex_count + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        comps: dict[int, set[int]] = {}
        for x in range(1, self.vertex_count + 1):
            comps.setdefault(find(x), set()).add(x)
        return list(comps.values())

    @property
    def matroid_rank(self) -> int:
        return self.vertex_count - len(self.components())


@lru_cache(maxsize=None)
def complete_graph(v: int) -> Graph:
    return Graph(v, tuple(combinations(range(1, v + 1), 2)))


@lru_cache(maxsize=None)
def complete_multipartite_graph(parts: int, size: int) -> Graph:
    """Parts are contiguous blocks of ``size`` vertices (strand-major labels)."""
    v = parts * size
    part_of = tuple((x - 1) // size + 1 for x in range(1, v + 1)) if size else ()
    edges = tuple((a, b) for a, b in combinations(range(1, v + 1), 2)
                  if part_of[a - 1] != part_of[b - 1])
    return Graph(v, edges, part_of)


def build_graph(family: str, m: int, p: int) -> Graph:
    """Graph of the arrangement behind one cosimplicial level.

    links/knots: complete graph on p*m points; hlinks: complete multipartite
    graph with one part of p points per strand; braids: complete graph on
    the m points of a single tensor factor.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if m < 1 or p < 0:
        raise ValueError("need m >= 1 and p >= 0")
    if family == "knots" and m != 1:
        raise ValueError("knots are links with one strand")
    if family in ("links", "knots"):
        g = complete_graph(p * m)
        return Graph(g.vertex_count, g.edges, tuple((x - 1) // p + 1 for x in range(1, p * m + 1)))
    if family == "hlinks":
        if p == 0:
            return Graph(0, ())
        return complete_multipartite_graph(m, p)
    return complete_graph(m)


def format_monomial(mono: Monomial, decode=None) -> str:
    if not mono:
        return "1"
    if decode is None:
        return " ".join(f"e{u},{v}" for u, v in mono)
    parts = []
    for u, v in mono:
        (a, l), (b, k) = decode(u), decode(v)
        parts.append(f"({a},{l})-({b},{k})")
    return " ".join(parts)


class _Forest:
    """Adjacency view of an edge set, for path queries."""

    __slots__ = ("adj",)

    def __init__(self, edges: Iterable[Edge]):
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        self.adj = adj

    def components(self) -> list[list[int]]:
        seen = set()
        out = []
        for start in self.adj:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(comp)
        return out

    def path(self, a: int, b: int) -> list[int]:
        """Vertex sequence a..b along the unique tree path."""
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        out.reverse()
        return out


def _is_forest(edges: Sequence[Edge]) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _violations(graph: Graph, mono: Monomial) -> list[tuple[Edge, list[int]]]:
    """Edges f outside ``mono`` closing a cycle whose other edges all exceed f.

    Returns (f, path) pairs where path is the vertex path in the forest from
    f's smaller endpoint to its larger one.  ``mono`` must be a forest.
    """
    forest = _Forest(mono)
    present = set(mono)
    out = []
    for comp in forest.components():
        if len(comp) < 3:
            continue
        for a, b in combinations(sorted(comp), 2):
            if (a, b) in present or not graph.has_edge(a, b):
                continue
            path = forest.path(a, b)
            fk = (b, a)
            if all(edge_key((min(x, y), max(x, y))) > fk for x, y in zip(path, path[1:])):
                out.append(((a, b), path))
    return out


def _path_minima(adj: dict[int, list[int]], root: int) -> dict[int, tuple[int, int]]:
    """Smallest edge key on the forest path from ``root`` to each reachable vertex."""
    inf = (1 << 60, 0)
    out = {root: inf}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in out:
                k = (x, y) if x > y else (y, x)
                out[y] = min(out[x], k)
                stack.append(y)
    return out


def _extends_nbc(graph: Graph, adj: dict[int, list[int]], e: Edge) -> bool:
    """Whether nbc forest ``adj`` plus a new edge ``e`` (larger than all of
    its edges) is still an nbc forest."""
    a, b = e
    side_a = _path_minima(adj, a)
    if b in side_a:
        return False
    side_b = _path_minima(adj, b)
    ek = edge_key(e)
    for x, mx in side_a.items():
        for y, my in side_b.items():
            if x == a and y == b:
                continue
            u, v = (x, y) if x < y else (y, x)
            fk = (v, u)
            if fk < ek and fk < mx and fk < my and graph.has_edge(u, v):
                return False
    return True


def is_nbc(graph: Graph, mono: Monomial) -> bool:
    return _is_forest(mono) and not _violations(graph, mono)


class OSAlgebra:
    """Straightening engine for the graph ``graph`` in ambient dimension ``n``.

    Coefficients produced here are integers; they are mapped into the
    coefficient field by the callers.  Instances memoize normal forms; the
    cache never changes results.
    """

    def __init__(self, graph: Graph, n: int):
        if n < 2:
            raise ValueError("ambient dimension must be at least 2")
        self.graph = graph
        self.n = n
        self.anticommuting = (n - 1) % 2 == 1
        self.flip = -1 if n % 2 else 1
        self._cache: dict[Monomial, dict[Monomial, int]] = {}

    @property
    def degree(self) -> int:
        return self.n - 1

    def canonicalize(self, word: Sequence[Edge]) -> tuple[int, Monomial]:
        """Reorder an ordered product of oriented generators.

        Returns (sign, monomial) with sign 0 when a generator repeats.
        """
        sign = 1
        edges = []
        for x, y in word:
            if x == y:
                raise ValueError(f"({x},{y}) is not a chord")
            if x > y:
                x, y = y, x
                sign *= self.flip
            if not self.graph.has_edge(x, y):
                raise ValueError(f"chord ({x},{y}) is not an edge of the graph")
            edges.append((x, y))
        if len(set(edges)) != len(edges):
            return 0, ()
        keys = [edge_key(e) for e in edges]
        if self.anticommuting:
            inv = 0
            for i in range(len(keys)):
                ki = keys[i]
                for j in range(i + 1, len(keys)):
                    if keys[j] < ki:
                        inv += 1
            if inv % 2:
                sign = -sign
        return sign, tuple(sorted(edges, key=edge_key))

    def reduce(self, mono: Monomial, rng: random.Random | None = None) -> dict[Monomial, int]:
        """Normal form of a canonical monomial as {nbc monomial: coefficient}."""
        if rng is None:
            hit = self._cache.get(mono)
            if hit is not None:
                return hit
        if not _is_forest(mono):
            out: dict[Monomial, int] = {}
        else:
            viol = _violations(self.graph, mono)
            if not viol:
                out = {mono: 1}
            else:
                if rng is None:
                    f, path = min(viol, key=lambda fp: edge_key(fp[0]))
                else:
                    f, path = rng.choice(viol)
                out = self._apply_circuit(mono, f, path, rng)
        if rng is None:
            self._cache[mono] = out
        return out

    def _apply_circuit(self, mono, f, path, rng):
        # cycle path[0] -> ... -> path[-1] -> path[0]; its last edge is f reversed
        cyc = list(zip(path, path[1:])) + [(path[-1], path[0])]
        r = len(cyc)
        broken = {(min(x, y), max(x, y)) for x, y in cyc[:-1]}
        rest = [e for e in mono if e not in broken]
        sgn_w, same = self.canonicalize(cyc[:-1] + rest)
        assert same == mono and sgn_w != 0

        def sigma(t):  # t is 0-based
            return (-1) ** t if self.anticommuting else 1

        out: dict[Monomial, int] = {}
        for t in range(r - 1):
            coeff = -sgn_w * sigma(r - 1) * sigma(t)
            word = [g for s, g in enumerate(cyc) if s != t] + rest
            s, m2 = self.canonicalize(word)
            if not s:
                continue
            for mono2, c in self.reduce(m2, rng).items():
                v = out.get(mono2, 0) + coeff * s * c
                if v:
                    out[mono2] = v
                else:
                    out.pop(mono2, None)
        return out

    def straighten_word(self, word: Sequence[Edge], rng: random.Random | None = None) -> dict[Monomial, int]:
        sign, mono = self.canonicalize(word)
        if not sign:
            return {}
        red = self.reduce(mono, rng)
        if sign == 1:
            return dict(red)
        return {k: -v for k, v in red.items()}

    def straighten_combination(self, terms: Mapping[Sequence[Edge], int]) -> dict[Monomial, int]:
        out: dict[Monomial, int] = {}
        for word, c in terms.items():
            for mono, d in self.straighten_word(word).items():
                v = out.get(mono, 0) + c * d
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return out

    def multiply(self, x: Monomial, y: Monomial) -> dict[Monomial, int]:
        return self.straighten_word(tuple(x) + tuple(y))


@dataclass(frozen=True)
class CochainClass:
    """Homogeneous linear combination of nbc monomials over a field."""

    graph: Graph
    n: int
    field: Field
    terms: Mapping[Monomial, object]

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            c = self.field.element(c)
            if c:
                clean[tuple(mono)] = c
        weights = {len(m) for m in clean}
        if len(weights) > 1:
            raise ValueError("cochain class must be homogeneous")
        object.__setattr__(self, "terms", clean)

    @property
    def weight(self) -> int | None:
        return len(next(iter(self.terms))) if self.terms else None

    @property
    def degree(self) -> int | None:
        w = self.weight
        return None if w is None else w * (self.n - 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CochainClass):
            return NotImplemented
        return (self.graph == other.graph and self.n == other.n
                and self.field == other.field and dict(self.terms) == dict(other.terms))

    def __hash__(self):
        return hash((self.graph, self.n, self.field, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{format_monomial(m)}]" for m, c in self.terms.items())


@lru_cache(maxsize=256)
def _algebra(graph: Graph, n: int) -> OSAlgebra:
    return OSAlgebra(graph, n)


def straighten(graph: Graph, raw, n: int, field: Field = QQ,
               rng: random.Random | None = None) -> CochainClass:
    """Class of an ordered product of generators, expressed in the nbc basis.

    ``raw`` is either a sequence of chords (pairs of vertices, any
    orientation) or a CochainClass, which is re-straightened term by term.
    ``rng`` randomizes which broken circuit is eliminated first.
    """
    alg = _algebra(graph, n)
    if isinstance(raw, CochainClass):
        acc: dict[Monomial, object] = {}
        for mono, c in raw.terms.items():
            for m2, d in alg.straighten_word(mono, rng).items():
                acc[m2] = acc.get(m2, 0) + c * d
        return CochainClass(graph, n, field, acc)
    return CochainClass(graph, n, field, alg.straighten_word(list(raw), rng))


def enumerate_nbc(graph: Graph, k: int, must_touch: Sequence[Iterable[int]] | None = None) -> list[Monomial]:
    """All weight-k nbc monomials, in lexicographic order of their edge keys.

    ``must_touch`` optionally lists vertex groups; only monomials with an
    endpoint in every group are returned (used for normalized bases).
    """
    if k < 0:
        raise ValueError("weight must be nonnegative")
    edges = graph.edges
    groups = [frozenset(g) for g in (must_touch or ())]
    group_of: dict[int, list[int]] = {}
    for gi, g in enumerate(groups):
        for x in g:
            group_of.setdefault(x, []).append(gi)
    touch = [set(gi for x in e for gi in group_of.get(x, ())) for e in edges]
    out: list[Monomial] = []
    if k > graph.matroid_rank:
        return out

    counts = [0] * len(groups)
    adj: dict[int, list[int]] = {}

    def rec(start: int, chosen: list[Edge], missing: int):
        r = k - len(chosen)
        if r == 0:
            if missing == 0:
                out.append(tuple(chosen))
            return
        need = missing - 2 * (r - 1)
        for idx in range(start, len(edges) - r + 1):
            e = edges[idx]
            if need > 0:
                new = sum(1 for gi in touch[idx] if counts[gi] == 0)
                if new < need:
                    continue
            if not _extends_nbc(graph, adj, e):
                continue
            a, b = e
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
            newly = 0
            for gi in touch[idx]:
                if counts[gi] == 0:
                    newly += 1
                counts[gi] += 1
            chosen.append(e)
            rec(idx + 1, chosen, missing - newly)
            chosen.pop()
            adj[a].pop()
            adj[b].pop()
            for gi in touch[idx]:
                counts[gi] -= 1

    rec(0, [], len(groups))
    return out


def nbc_counts(graph: Graph) -> list[int]:
    """[b_0, b_1, ...]: number of nbc monomials of each weight."""
    return [len(enumerate_nbc(graph, k)) for k in range(graph.matroid_rank + 1)]


def hilbert_series(graph: Graph, n: int) -> tuple[int, ...]:
    """Coefficients (in t, lowest first) of sum_k b_k t^(k(n-1))."""
    counts = nbc_counts(graph)
    d = n - 1
    coeffs = [0] * ((len(counts) - 1) * d + 1)
    for k, b in enumerate(counts):
        coeffs[k * d] += b
    return tuple(coeffs)


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return out


def _falling(v: int) -> list[int]:
    """Coefficients of k(k-1)...(k-v+1)."""
    poly = [1]
    for i in range(v):
        nxt = [0] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j + 1] += c
            nxt[j] -= i * c
        poly = nxt
    return poly


def _canon(v: int, edges: frozenset) -> tuple[int, frozenset, int]:
    used = sorted({x for e in edges for x in e})
    relabel = {x: i for i, x in enumerate(used)}
    return v - len(used), frozenset((relabel[a], relabel[b]) for a, b in edges), len(used)


@lru_cache(maxsize=None)
def _chromatic(nv: int, edges: frozenset) -> tuple[int, ...]:
    if not edges:
        return tuple([0] * nv + [1])
    if len(edges) == nv * (nv - 1) // 2:
        return tuple(_falling(nv))
    e = max(edges)
    a, b = e
    deleted = edges - {e}
    # contract b into a, then relabel so vertices stay 0..nv-2
    contracted = set()
    for x, y in deleted:
        x = a if x == b else x
        y = a if y == b else y
        if x == y:
            continue
        x = x - 1 if x > b else x
        y = y - 1 if y > b else y
        contracted.add((min(x, y), max(x, y)))
    pd = _chromatic_any(nv, frozenset(deleted))
    pc = _chromatic_any(nv - 1, frozenset(contracted))
    return tuple(_poly_sub(list(pd), list(pc)))


def _chromatic_any(nv: int, edges: frozenset) -> tuple[int, ...]:
    isolated, canon, used = _canon(nv, edges)
    core = _chromatic(used, canon)
    return tuple([0] * isolated + list(core))


def chromatic_poly(graph: Graph) -> tuple[int, ...]:
    """Chromatic polynomial by deletion-contraction, coefficients lowest first."""
    edges = frozenset((u - 1, v - 1) for u, v in graph.edges)
    poly = list(_chromatic_any(graph.vertex_count, edges))
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def nbc_counts_from_chromatic(graph: Graph) -> list[int]:
    """b_k = (-1)^k [k^(v-k)] chi_G, from sum_k b_k x^k = (-x)^v chi_G(-1/x)."""
    chi = chromatic_poly(graph)
    v = graph.vertex_count
    out = []
    for k in range(v + 1):
        j = v - k
        c = chi[j] if j < len(chi) else 0
        out.append((-1) ** k * c)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
