"""Surface systems on the Milnor fiber of T_{p,q,r}.

The fiber carries a torus fibration with three singular fibers, each a
closed chain of 2-spheres; dropping one sphere from each chain and tying
the rest to a regular fiber yields a basis of H_2.  This module builds
that basis with its intersection form, the homological monodromy action
on it, and the pairing vector of the fibration's section.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quadlattice import GramLattice, _bareiss_det, t_tilde_lattice

__all__ = [
    "SurfaceSystem",
    "surface_system",
    "monodromy_action",
    "section_vector",
    "char_poly",
]

IntMatrix = tuple[tuple[int, ...], ...]


def _check_triple(p: int, q: int, r: int) -> None:
    if min(p, q, r) < 2:
        raise ValueError("p, q, r must all be >= 2")
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1:
        raise ValueError(f"({p},{q},{r}) is neither a cusp nor a parabolic triple")


@dataclass(frozen=True)
class SurfaceSystem:
    """Basis of H_2 of the Milnor fiber with its intersection form.

    For tag "S'" the basis is (spheres s{m}_{j}, s+, t2) and ``t2_index``
    points at the fiber class; the removed sphere s{m}_0 of each chain
    expands as t2 - sum_j s{m}_j.
    """

    triple: tuple[int, int, int]
    tag: str
    lattice: GramLattice
    t2_index: int | None

    @property
    def labels(self) -> tuple[str, ...]:
        return self.lattice.labels

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def arm_indices(self, m: int) -> list[int]:
        """Basis indices of the spheres s{m}_1 .. s{m}_{len}."""
        p, q, r = self.triple
        arms = (p - 1, q - 1, r - 1)
        start = sum(arms[: m - 1])
        return list(range(start, start + arms[m - 1]))

    def expand_sigma_m0(self, m: int) -> tuple[int, ...]:
        """Coordinates of the removed chain sphere s{m}_0 in this basis."""
        if self.tag != "S'":
            raise ValueError("expansion is defined on the S' basis")
        v = [0] * self.rank
        v[self.t2_index] = 1
        for i in self.arm_indices(m):
            v[i] = -1
        return tuple(v)

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "tag": self.tag,
            "labels": list(self.labels),
            "gram": [list(r) for r in self.lattice.gram],
        }


def surface_system(p: int, q: int, r: int, tag: str = "S'") -> SurfaceSystem:
    _check_triple(p, q, r)
    lat = t_tilde_lattice(p, q, r, tag)
    t2 = lat.rank - 1 if tag == "S'" else None
    return SurfaceSystem((p, q, r), tag, lat, t2)


def monodromy_action(p: int, q: int, r: int) -> IntMatrix:
    """Homological monodromy on the S' basis, columns = images.

    Each sphere chain shifts cyclically, s{m}_j -> s{m}_{j+1}, the wrap
    image s{m}_0 expanding through the fiber relation t2 = chain sum;
    s+ -> s+ + s1_1 + s2_1 + s3_1 - t2 and t2 is fixed.
    """
    sys = surface_system(p, q, r, "S'")
    n = sys.rank
    t2 = sys.t2_index
    plus = n - 2
    cols: list[list[int]] = []
    for m in (1, 2, 3):
        idx = sys.arm_indices(m)
        for pos, i in enumerate(idx):
            col = [0] * n
            if pos + 1 < len(idx):
                col[idx[pos + 1]] = 1
            else:
                col[t2] = 1
                for j in idx:
                    col[j] -= 1
            cols.append(col)
    col_plus = [0] * n
    col_plus[plus] = 1
    for m in (1, 2, 3):
        col_plus[sys.arm_indices(m)[0]] += 1
    col_plus[t2] -= 1
    cols.append(col_plus)
    col_t2 = [0] * n
    col_t2[t2] = 1
    cols.append(col_t2)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def section_vector(p: int, q: int, r: int) -> tuple[int, ...]:
    """Pairing functional of the section class against the S' basis:
    zero on every sphere and on s+, one on the fiber class."""
    sys = surface_system(p, q, r, "S'")
    v = [0] * sys.rank
    v[sys.t2_index] = 1
    return tuple(v)


def char_poly(m: IntMatrix) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_n) of det(x*I - M), exact.

    Evaluated at n+1 integer points by fraction-free elimination and
    interpolated back; coefficients of an integer matrix are integers.
    """
    n = len(m)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        rows = [
            [(x if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)
        ]
        ys.append(_bareiss_det(rows))
    # Lagrange interpolation with exact rationals
    coeffs = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        poly = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                new[k] -= c * xj
                new[k + 1] += c
            poly = new
        scale = Fraction(yi) / denom
        for k, c in enumerate(poly):
            coeffs[k] += c * scale
    out = []
    for c in coeffs:
        if c.denominator != 1:  # pragma: no cover - integrality guard
            raise AssertionError("non-integer characteristic coefficient")
        out.append(int(c))
    return tuple(out)
