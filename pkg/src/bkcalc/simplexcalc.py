"""Index-level calculus of the simplex category.

Order-preserving maps between the ordinals [p] = {0, ..., p}, the coface
and codegeneracy generators, the cube-to-Delta functors ``c_j`` and
``c_j^!``, and a harness that checks the cosimplicial identities for a
family of linear operators (as induced maps on cohomology, so every
composite is read in reverse).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Protocol, Sequence

__all__ = [
    "OrderMap",
    "coface",
    "codegeneracy",
    "cj_map",
    "cjshriek_map",
    "OperatorFamily",
    "IdentityFailure",
    "check_identities",
]


@dataclass(frozen=True)
class OrderMap:
    """Weakly order-preserving map [source_size] -> [target_size]."""

    source_size: int
    target_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.source_size + 1:
            raise ValueError("values must list the image of every element of the source")
        if any(not 0 <= v <= self.target_size for v in vals):
            raise ValueError("value outside the target ordinal")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError("map is not order-preserving")

    def __call__(self, k: int) -> int:
        return self.values[k]

    def __matmul__(self, other: "OrderMap") -> "OrderMap":
        """Composite ``self o other``."""
        if other.target_size != self.source_size:
            raise ValueError("maps are not composable")
        return OrderMap(other.source_size, self.target_size, tuple(self.values[v] for v in other.values))

    @classmethod
    def identity(cls, p: int) -> "OrderMap":
        return cls(p, p, tuple(range(p + 1)))

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_size + 1))


def coface(p: int, i: int) -> OrderMap:
    """d^i : [p] -> [p+1], skipping i."""
    if not 0 <= i <= p + 1:
        raise ValueError(f"coface index {i} out of range for [{p}]")
    return OrderMap(p, p + 1, tuple(k if k < i else k + 1 for k in range(p + 1)))


def codegeneracy(p: int, i: int) -> OrderMap:
    """s^i : [p+1] -> [p], hitting i twice."""
    if not 0 <= i <= p:
        raise ValueError(f"codegeneracy index {i} out of range for [{p}]")
    return OrderMap(p + 1, p, tuple(k if k <= i else k - 1 for k in range(p + 2)))


def cj_map(j: int, S: Iterable[int], S2: Iterable[int]) -> OrderMap:
    """Image under c_j of the inclusion S ⊆ S2 of nonempty subsets of [j].

    The map is [|S|-1] ≅ S ⊆ S2 ≅ [|S2|-1] with both isomorphisms order
    preserving.
    """
    S, S2 = sorted(set(S)), sorted(set(S2))
    if not S:
        raise ValueError("S must be nonempty")
    if not set(S) <= set(S2):
        raise ValueError("S must be a subset of S2")
    if any(not 0 <= x <= j for x in S2):
        raise ValueError(f"subsets must lie in [{j}]")
    pos = {x: i for i, x in enumerate(S2)}
    return OrderMap(len(S) - 1, len(S2) - 1, tuple(pos[x] for x in S))


def cjshriek_map(j: int, S: Iterable[int], S2: Iterable[int]) -> OrderMap:
    """Image under c_j^! of the inclusion S ⊆ S2 of subsets of {1..j}.

    [j-|S|] ≅ [j]-S -> [j]-S2 ≅ [j-|S2|], the middle map sending i to the
    largest element of [j]-S2 that is <= i.
    """
    S, S2 = set(S), set(S2)
    if not S <= S2:
        raise ValueError("S must be a subset of S2")
    if any(not 1 <= x <= j for x in S2):
        raise ValueError(f"subsets must lie in {{1..{j}}}")
    src = [x for x in range(j + 1) if x not in S]
    tgt = [x for x in range(j + 1) if x not in S2]
    pos = {x: i for i, x in enumerate(tgt)}
    vals = []
    for x in src:
        y = max(t for t in tgt if t <= x)  # 0 is never removed
        vals.append(pos[y])
    return OrderMap(len(src) - 1, len(tgt) - 1, tuple(vals))


Vector = Mapping[Hashable, object]


class OperatorFamily(Protocol):
    """Linear maps induced on cohomology by a cosimplicial space.

    ``basis(p)`` lists basis keys of level p; ``coface(p, i, v)`` is the
    pullback along d^i : [p-1] -> [p], mapping level p to level p-1
    (0 <= i <= p); ``codegeneracy(p, i, v)`` is the pullback along
    s^i : [p+1] -> [p], mapping level p to level p+1 (0 <= i <= p).
    Vectors are sparse {basis key: coefficient} mappings.
    """

    def basis(self, p: int) -> Sequence[Hashable]: ...

    def coface(self, p: int, i: int, vec: Vector) -> Vector: ...

    def codegeneracy(self, p: int, i: int, vec: Vector) -> Vector: ...


@dataclass(frozen=True)
class IdentityFailure:
    identity: str
    p: int
    i: int
    j: int
    detail: str


def _clean(vec: Vector) -> dict:
    return {k: v for k, v in vec.items() if v}


def check_identities(fam: OperatorFamily, p_max: int) -> list[IdentityFailure]:
    """Check every cosimplicial identity among levels 0..p_max+1.

    For pullbacks, d^j d^i = d^i d^(j-1) (i < j) becomes
    (d^i)* (d^j)* = (d^(j-1))* (d^i)* on level p+1, and similarly for the
    others.  Returns the list of failures, empty on success.
    """
    failures: list[IdentityFailure] = []
    bases = {p: list(fam.basis(p)) for p in range(p_max + 2)}
    keysets = {p: set(b) for p, b in bases.items()}

    def run(name, p, i, j, level, lhs: Callable, rhs: Callable, target):
        for b in bases[level]:
            unit = {b: 1}
            try:
                left = _clean(lhs(unit))
                right = _clean(rhs(unit))
            except Exception as exc:  # structural problems are reported, not raised
                failures.append(IdentityFailure(name, p, i, j, f"error on {b!r}: {exc}"))
                return
            stray = (set(left) | set(right)) - keysets[target]
            if stray:
                failures.append(IdentityFailure(
                    name, p, i, j, f"image of {b!r} leaves the basis of level {target}: {sorted(map(repr, stray))[:3]}"))
                return
            if left != right:
                failures.append(IdentityFailure(name, p, i, j, f"mismatch on {b!r}: {left} != {right}"))
                return

    d = fam.coface
    s = fam.codegeneracy
    # d^j d^i = d^i d^{j-1} : [p-1] -> [p+1], i < j <= p+1
    for p in range(1, p_max + 1):
        for j in range(p + 2):
            for i in range(j):
                run("d^j d^i = d^i d^(j-1)", p, i, j, p + 1,
                    lambda v, i=i, j=j, p=p: d(p, i, d(p + 1, j, v)),
                    lambda v, i=i, j=j, p=p: d(p, j - 1, d(p + 1, i, v)),
                    p - 1)
    # s^j d^i : [p] -> [p+1] -> [p], 0 <= j <= p, 0 <= i <= p+1
    for p in range(0, p_max + 1):
        for j in range(p + 1):
            for i in range(p + 2):
                lhs = (lambda v, i=i, j=j, p=p: d(p + 1, i, s(p, j, v)))
                if i < j:
                    rhs = (lambda v, i=i, j=j, p=p: s(p - 1, j - 1, d(p, i, v)))
                    name = "s^j d^i = d^i s^(j-1)"
                elif i in (j, j + 1):
                    rhs = (lambda v: dict(v))
                    name = "s^j d^i = id"
                else:
                    rhs = (lambda v, i=i, j=j, p=p: s(p - 1, j, d(p, i - 1, v)))
                    name = "s^j d^i = d^(i-1) s^j"
                run(name, p, i, j, p, lhs, rhs, p)
    # s^j s^i = s^(i-1) s^j : [p+2] -> [p], j < i <= p+1
    for p in range(0, p_max):
        for i in range(p + 2):
            for j in range(i):
                run("s^j s^i = s^(i-1) s^j", p, i, j, p,
                    lambda v, i=i, j=j, p=p: s(p + 1, i, s(p, j, v)),
                    lambda v, i=i, j=j, p=p: s(p + 1, j, s(p, i - 1, v)),
                    p + 2)
    return failures
