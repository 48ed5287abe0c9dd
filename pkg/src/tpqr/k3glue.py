"""K3-side bookkeeping: the duality table, critical-point counts, glued
lattices, and the boundary classification for loops in the base of the
Kummer-surface elliptic fibration with two IV* fibers and eight I_1
fibers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cuspdual import Triple
from .quadlattice import (
    GramLattice,
    direct_sum,
    discriminant,
    hyperbolic_plane,
    k3_lattice,
    parity,
    signature,
    t_lattice,
    unimodular_indefinite_isomorphic,
)
from .sl2z import (
    ALPHA,
    BETA,
    GAMMA,
    ConjugacyCertificate,
    HomologyClass,
    SL2Matrix,
    evaluate_word,
    is_conjugate,
    monodromy_matrix,
)

__all__ = [
    "DualPair",
    "InoseCase",
    "InoseClassification",
    "GluedVerdict",
    "strange_duality_table",
    "pair_for_triple",
    "critical_count",
    "glued_lattice",
    "inose_monodromy",
    "classify_inose_boundary",
    "SINGULAR_FIBER_EULER",
    "INOSE_FIBER_COUNTS",
    "torus_knot_types",
]


@dataclass(frozen=True)
class DualPair:
    left_label: str
    left: tuple[int, int, int]
    right_label: str
    right: tuple[int, int, int]

    @property
    def self_dual(self) -> bool:
        return self.left == self.right

    @property
    def index_sum(self) -> int:
        return sum(self.left) + sum(self.right)

    def to_json(self) -> dict:
        return {
            "left": {"label": self.left_label, "triple": list(self.left)},
            "right": {"label": self.right_label, "triple": list(self.right)},
            "self_dual": self.self_dual,
        }


_TABLE = (
    DualPair("E12", (2, 3, 7), "E12", (2, 3, 7)),
    DualPair("Z11", (2, 4, 5), "E13", (2, 3, 8)),
    DualPair("Q10", (3, 3, 4), "E14", (2, 3, 9)),
    DualPair("Z12", (2, 4, 6), "Z12", (2, 4, 6)),
    DualPair("Q11", (3, 3, 5), "Z13", (2, 4, 7)),
    DualPair("Q12", (3, 3, 6), "Q12", (3, 3, 6)),
    DualPair("W12", (2, 5, 5), "W12", (2, 5, 5)),
    DualPair("S11", (3, 4, 4), "W13", (2, 5, 6)),
    DualPair("S12", (3, 4, 5), "S12", (3, 4, 5)),
    DualPair("U12", (4, 4, 4), "U12", (4, 4, 4)),
)


def strange_duality_table() -> tuple[DualPair, ...]:
    """The ten duality pairs (six self-dual) among the fourteen cusp
    triples, keyed by the standard singularity labels."""
    return _TABLE


def pair_for_triple(p: int, q: int, r: int) -> Optional[DualPair]:
    t = tuple(sorted((p, q, r)))
    for pair in _TABLE:
        if t in (pair.left, pair.right):
            return pair
    return None


def critical_count(pair: DualPair) -> int:
    """Total count of fibration critical points over the two sides."""
    if pair not in _TABLE:
        raise ValueError(f"{pair} is not a duality-table pair")
    return pair.index_sum


@dataclass(frozen=True)
class GluedVerdict:
    det: int
    signature: tuple[int, int, int]
    parity: str
    unimodular: bool
    isomorphic_to_k3: Optional[bool]

    def to_json(self) -> dict:
        return {
            "det": self.det,
            "signature": list(self.signature),
            "parity": self.parity,
            "unimodular": self.unimodular,
            "isomorphic_to_k3": self.isomorphic_to_k3,
        }


def glued_lattice(pair: DualPair) -> tuple[GramLattice, GluedVerdict]:
    """T(left) + T(right) + H, the H spanned by a section and the common
    fiber class; unimodular exactly for the (2,3,7) self-pair, in which
    case the sum is the K3 lattice."""
    if pair not in _TABLE:
        raise ValueError(f"{pair} is not a duality-table pair")
    h = GramLattice.from_rows(["section", "fiber"], hyperbolic_plane().gram)
    lat = direct_sum(t_lattice(*pair.left), t_lattice(*pair.right), h)
    det = discriminant(lat)
    uni = abs(det) == 1
    iso = unimodular_indefinite_isomorphic(lat, k3_lattice()) if uni else None
    return lat, GluedVerdict(det, signature(lat), parity(lat), uni, iso)


# Euler numbers of the singular fibers of the Kummer-surface fibration:
# eight nodal fibers and two of the star type with five components.
SINGULAR_FIBER_EULER = {"I1": 1, "IV*": 8}
INOSE_FIBER_COUNTS = {"I1": 8, "IV*": 2}


def torus_knot_types(p: int, q: int, r: int) -> tuple[tuple[int, int], ...]:
    """Knot types traced by the three critical-point families when the
    fibration is spun over the circle of fiber directions."""
    return ((p, p - 1), (q, q - 1), (r, r - 1))


@dataclass(frozen=True)
class InoseCase:
    """Quadrant counts (c1,c2,c3,c4): how many of the eight simple critical
    values in each quadrant the domain contains; each quadrant holds two."""

    counts: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.counts) != 4 or any(c not in (0, 1, 2) for c in self.counts):
            raise ValueError("quadrant counts must be four values in {0,1,2}")

    @classmethod
    def of(cls, c1: int, c2: int, c3: int, c4: int) -> "InoseCase":
        return cls((c1, c2, c3, c4))


def inose_monodromy(
    case: InoseCase,
    gamma: HomologyClass = GAMMA,
) -> SL2Matrix:
    """Boundary monodromy of a star-convex domain with the given quadrant
    counts: (ta tb)^4 ta^{c4} tb^{c3} tg^{c2} ta^{c1}, rightmost first.

    ``gamma`` is the third curve; the default (1,-1) is the convention
    fixed by requiring all four classified cases to match.
    """
    c1, c2, c3, c4 = case.counts
    word = [(ALPHA, 1), (BETA, 1)] * 4 + [
        (ALPHA, c4),
        (BETA, c3),
        (gamma, c2),
        (ALPHA, c1),
    ]
    return evaluate_word(word)


@dataclass(frozen=True)
class InoseClassification:
    triple: Triple
    side: str  # "direct": monodromy ~ A; "inverse": monodromy ~ A^{-1}
    certificate: ConjugacyCertificate

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple.sorted),
            "side": self.side,
            "certificate": self.certificate.to_json(),
        }


def classify_inose_boundary(
    case: InoseCase, gamma: HomologyClass = GAMMA
) -> Optional[InoseClassification]:
    """Match the boundary monodromy against the fourteen table triples.

    Accepts conjugacy to A or to A^{-1} and records which side matched.
    The inverse side is consulted first: under the fixed twist convention
    the computed boundary word lands uniformly in the inverse class of the
    link-monodromy normalization (the boundary circle is traversed
    opposite to it), and preferring one side keeps dual pairs - whose
    monodromies are inverse-conjugate to each other - unambiguous.
    """
    m = inose_monodromy(case, gamma)
    triples = sorted({pair.left for pair in _TABLE} | {pair.right for pair in _TABLE})
    for prefer in ("inverse", "direct"):
        matches = []
        for t in triples:
            a = monodromy_matrix(*t)
            cert = is_conjugate(m, a.inverse() if prefer == "inverse" else a)
            if cert is not None:
                other = is_conjugate(m, a if prefer == "inverse" else a.inverse())
                side = "both" if other is not None else prefer
                matches.append((t, side, cert))
        if len(matches) == 1:
            t, side, cert = matches[0]
            return InoseClassification(Triple.of(*t), side, cert)
        if len(matches) > 1:  # pragma: no cover - distinct triples, distinct classes
            raise AssertionError(f"ambiguous classification: {matches}")
    return None
