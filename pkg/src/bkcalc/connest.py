"""Connectivity and convergence bookkeeping for the link, homotopy-link and
braid towers.  Everything here is closed-form arithmetic; nothing looks at
computed pages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "cube_cartesian",
    "layer_connectivity",
    "vanishing_region",
    "lower_line_slope",
    "ConvergenceVerdict",
    "convergence_verdict",
    "page_label",
]


def cube_cartesian(k: int, n: int) -> int:
    """Cartesianness of the k-cube of embedding spaces of point sets in an n-manifold."""
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    return (k - 1) * (n - 2) + 1


def layer_connectivity(j: int, n: int) -> int:
    """Connectivity of the j-th layer of the Tot tower of the link model.

    The layer is a j-fold loop space of the total fiber of a
    cube_cartesian(j, n)-cartesian cube, hence cube_cartesian(j, n) - j.
    """
    if j < 1 or n < 3:
        raise ValueError("need j >= 1 and n >= 3")
    return (j - 1) * (n - 3)


def vanishing_region(m: int, p: int, n: int) -> tuple[Fraction, int]:
    """(q_low, q_high): E1^{-p,q} can be nonzero only for q_low <= q <= q_high.

    q_low = p(n-1)/2 because k chords touch at most 2k columns; q_high is the
    top degree (pm-1)(n-1) of the level-p cohomology.
    """
    if m < 1 or p < 1 or n < 3:
        raise ValueError("need m, p >= 1 and n >= 3")
    return Fraction(p * (n - 1), 2), (p * m - 1) * (n - 1)


def lower_line_slope(n: int) -> Fraction:
    """Slope of the lower vanishing line in the (-p, q) plane."""
    return Fraction(1 - n, 2)


@dataclass(frozen=True)
class ConvergenceVerdict:
    """None means no statement is available (unknown)."""

    family: str
    n: int
    converges_cohomology: bool | None
    converges_homotopy: bool | None
    target: str
    citations: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "converges_cohomology": self.converges_cohomology,
            "converges_homotopy": self.converges_homotopy,
            "target": self.target,
            "citations": list(self.citations),
        }


def _steep_line_note(n: int) -> str:
    s = lower_line_slope(n)
    return f"lower vanishing line q = p(n-1)/2, slope {s} in the (-p,q) plane, steeper than -1: {s < -1}"


def convergence_verdict(family: str, n: int) -> ConvergenceVerdict:
    if family not in ("knots", "links", "hlinks", "braids"):
        raise ValueError(f"unknown family {family!r}")
    if family == "braids":
        return ConvergenceVerdict(
            family, n, None, None,
            target=f"formal pages of the cobar model of the loop space of C(m, R^{n - 1})",
            citations=("Tot of the braid model is the loop space of C(m, R^(n-1)) (cobar construction)",
                       "no convergence statement is available for its spectral sequences"),
        )
    big = n > 3
    cites = [
        f"layer connectivity (j-1)(n-3) = {n - 3}*(j-1): increases with j iff n > 3 ({big})",
        _steep_line_note(n),
    ]
    if family in ("links", "knots"):
        cites.append(f"embedding tower converges when n - 1 - 2 = {n - 3} > 0 ({big})")
        space = "long knot space" if family == "knots" else "string link space"
        if big:
            return ConvergenceVerdict(family, n, True, True, target=space, citations=tuple(cites))
        return ConvergenceVerdict(family, n, None, None, target="unknown (n = 3)" if n == 3 else "unknown",
                                  citations=tuple(cites))
    cites.append("no connectivity estimate for layers of the homotopy-link tower")
    if big:
        return ConvergenceVerdict(family, n, True, None,
                                  target="Tot of the homotopy string link model", citations=tuple(cites))
    return ConvergenceVerdict(family, n, None, None, target="unknown (n = 3)" if n == 3 else "unknown",
                              citations=tuple(cites))


def page_label(family: str, n: int) -> str:
    """Caption attached to computed pages."""
    if family in ("links", "knots") and n > 3:
        return "pages of a convergent spectral sequence (cohomology and homotopy, n > 3)"
    return ("formal pages; known convergence: links cohomology & homotopy for n>3 only; "
            "hlinks cohomology for n>3")
