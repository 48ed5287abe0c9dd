"""Exact SL(2,Z) arithmetic for torus-bundle monodromies.

Monodromy matrices of the T_{p,q,r} family, trace classification, a
complete conjugacy decision procedure with explicit certificates, and
Dehn-twist words acting on H_1 of the 2-torus.

Hyperbolic conjugacy is decided through the RL-factorization: every
hyperbolic matrix of positive trace is conjugate to a positive word in

    R = (1 1; 0 1)   and   L = (1 0; 1 1),

unique up to cyclic rotation of the word.  The factorization is found by
running the continued-fraction expansion of the attracting fixed point
entirely in integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional

__all__ = [
    "SL2Matrix",
    "HomologyClass",
    "TwistWord",
    "RLWord",
    "ConjugacyCertificate",
    "MatrixClass",
    "ALPHA",
    "BETA",
    "GAMMA",
    "monodromy_matrix",
    "classify",
    "rl_word",
    "is_conjugate",
    "is_conjugate_to_inverse",
    "dehn_twist",
    "evaluate_word",
]


@dataclass(frozen=True)
class SL2Matrix:
    """2x2 integer matrix (a b; c d) with determinant exactly 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not isinstance(v, int):
                raise TypeError(f"integer entries required, got {v!r}")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(
                f"determinant must be 1: [[{self.a},{self.b}],[{self.c},{self.d}]]"
            )

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __mul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2Matrix":
        if n < 0:
            return self.inverse() ** (-n)
        out = SL2Matrix.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate_by(self, p: "SL2Matrix") -> "SL2Matrix":
        """p * self * p^{-1}."""
        return p * self * p.inverse()

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def to_json(self) -> list[list[int]]:
        return self.rows()

    @classmethod
    def from_json(cls, data) -> "SL2Matrix":
        (a, b), (c, d) = data
        return cls(int(a), int(b), int(c), int(d))

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


R = SL2Matrix(1, 1, 0, 1)
L = SL2Matrix(1, 0, 1, 1)
_I = SL2Matrix.identity()


class MatrixClass(Enum):
    IDENTITY = "identity"
    MINUS_IDENTITY = "minus_identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class HomologyClass:
    """Primitive class (m,n) in H_1 of the torus.

    Convention used throughout: alpha=(1,0), beta=(0,1), gamma=(1,-1),
    with the intersection pairing <(x1,x2),(y1,y2)> = x1*y2 - x2*y1.
    """

    m: int
    n: int

    def __post_init__(self):
        if math.gcd(abs(self.m), abs(self.n)) != 1:
            raise ValueError(f"({self.m},{self.n}) is not a primitive class")

    def pair(self, other: "HomologyClass | tuple[int, int]") -> int:
        om, on = (other.m, other.n) if isinstance(other, HomologyClass) else other
        return self.m * on - self.n * om


ALPHA = HomologyClass(1, 0)
BETA = HomologyClass(0, 1)
GAMMA = HomologyClass(1, -1)


@dataclass(frozen=True)
class TwistWord:
    """Ordered Dehn-twist word; the leftmost letter acts last."""

    steps: tuple[tuple[HomologyClass, int], ...]

    @classmethod
    def of(cls, *steps: tuple[HomologyClass, int]) -> "TwistWord":
        return cls(tuple((c, int(e)) for c, e in steps))

    def __iter__(self) -> Iterator[tuple[HomologyClass, int]]:
        return iter(self.steps)

    def to_json(self) -> list[dict]:
        return [{"class": [c.m, c.n], "exp": e} for c, e in self.steps]

    @classmethod
    def from_json(cls, data) -> "TwistWord":
        return cls(
            tuple(
                (HomologyClass(int(s["class"][0]), int(s["class"][1])), int(s["exp"]))
                for s in data
            )
        )


@dataclass(frozen=True)
class ConjugacyCertificate:
    """Witness P for P * source * P^{-1} = target; checked on construction."""

    source: SL2Matrix
    target: SL2Matrix
    conjugator: SL2Matrix
    relation: str = "P*M*P^-1 = N"

    def __post_init__(self):
        if not self.verify():
            raise ValueError("certificate does not re-verify")

    def verify(self) -> bool:
        return self.source.conjugate_by(self.conjugator) == self.target

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "conjugator": self.conjugator.to_json(),
            "relation": self.relation,
        }


def monodromy_matrix(p: int, q: int, r: int) -> SL2Matrix:
    """Torus-bundle monodromy of the T_{p,q,r} link.

    Product of the three factors (n-1 -1; 1 0) for n = r, q, p, with the
    r-factor leftmost.
    """
    for n in (p, q, r):
        if n < 2:
            raise ValueError(f"indices must be >= 2, got ({p},{q},{r})")
    return _factor(r) * _factor(q) * _factor(p)


def _factor(n: int) -> SL2Matrix:
    return SL2Matrix(n - 1, -1, 1, 0)


def classify(m: SL2Matrix) -> MatrixClass:
    if m == _I:
        return MatrixClass.IDENTITY
    if m == -_I:
        return MatrixClass.MINUS_IDENTITY
    t = abs(m.trace)
    if t < 2:
        return MatrixClass.ELLIPTIC
    if t == 2:
        return MatrixClass.PARABOLIC
    return MatrixClass.HYPERBOLIC


def dehn_twist(c: HomologyClass) -> SL2Matrix:
    """Right-handed twist along c acting on H_1: v -> v + <v,c> c."""
    e1 = (1 + c.n * c.m, c.n * c.n)  # image of (1,0); <(1,0),c> = n
    e2 = (-c.m * c.m, 1 - c.m * c.n)  # image of (0,1); <(0,1),c> = -m
    return SL2Matrix(e1[0], e2[0], e1[1], e2[1])


def evaluate_word(word: TwistWord | Iterable[tuple[HomologyClass, int]]) -> SL2Matrix:
    """Exact product of the twist word, leftmost letter applied last."""
    out = _I
    for c, e in word:
        out = out * (dehn_twist(c) ** e)
    return out


# ---------------------------------------------------------------------------
# RL-factorization of hyperbolic matrices.
#
# The attracting fixed point of a hyperbolic M with trace t >= 3 is the
# quadratic surd x = (P + sqrt(D))/Q with P = a-d, Q = 2c, D = t^2 - 4.
# Running the ordinary continued fraction of x (the integer PQa recursion)
# eventually cycles; two CF steps x = u1 + 1/(u2 + 1/x') combine into the
# SL2 move R^{u1} L^{u2}, so the cycle is the RL-word and the pre-period
# gives an explicit conjugator.
# ---------------------------------------------------------------------------

_IOTA = (0, 1, 1, 0)  # t -> 1/t, determinant -1; kept out of SL2Matrix


def _raw_mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def _raw_rpow(n):
    return (1, n, 0, 1)


def _floor_surd(p: int, q: int, isqrt_d: int) -> int:
    """floor((p + sqrt(d))/q) for non-square d > 0, q != 0."""
    if q > 0:
        return (p + isqrt_d) // q
    return -((p + isqrt_d) // (-q)) - 1


def _word_matrix(exps: tuple[int, ...]) -> SL2Matrix:
    """Matrix of R^{e1} L^{e2} R^{e3} ... for an even-length exponent tuple."""
    out = _I
    for i, e in enumerate(exps):
        out = out * ((R if i % 2 == 0 else L) ** e)
    return out


def _rotate2(exps: tuple[int, ...], j: int) -> tuple[int, ...]:
    """Rotate by j R/L-block pairs (2j positions)."""
    k = (2 * j) % len(exps)
    return exps[k:] + exps[:k]


def _canonical_exponents(exps: tuple[int, ...]) -> tuple[int, ...]:
    return min(_rotate2(exps, j) for j in range(len(exps) // 2))


@dataclass(frozen=True)
class RLWord:
    """Cyclic positive word R^{e1} L^{e2} ... R^{e_{2s-1}} L^{e_{2s}}.

    ``sign`` is +1 when the factored matrix itself has positive trace and
    -1 when the factorization was computed for its negative.
    """

    exponents: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        if len(self.exponents) == 0 or len(self.exponents) % 2 != 0:
            raise ValueError("exponent tuple must be nonempty of even length")
        if any(e < 1 for e in self.exponents):
            raise ValueError("all exponents must be >= 1")

    def matrix(self) -> SL2Matrix:
        m = _word_matrix(self.exponents)
        return m if self.sign == 1 else -m

    def canonical(self) -> tuple[int, ...]:
        return _canonical_exponents(self.exponents)

    def cyclic_equal(self, other: "RLWord") -> bool:
        return self.sign == other.sign and self.canonical() == other.canonical()

    def __str__(self) -> str:
        body = " ".join(
            f"{'R' if i % 2 == 0 else 'L'}^{e}" for i, e in enumerate(self.exponents)
        )
        return body if self.sign == 1 else f"-({body})"


def _rl_reduce(m: SL2Matrix) -> tuple[tuple[int, ...], SL2Matrix]:
    """Factor hyperbolic m of trace >= 3: returns (exps, P) with

    P * m * P^{-1} = _word_matrix(exps).
    """
    t = m.trace
    if t < 3:
        raise ValueError("positive hyperbolic trace required")
    d = t * t - 4
    sd = math.isqrt(d)
    # c = 0 would force a = d = +-1 and |trace| = 2, impossible here.
    assert m.c != 0
    p_st, q_st = m.a - m.d, 2 * m.c

    states: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    while (p_st, q_st) not in states:
        states[(p_st, q_st)] = len(quotients)
        u = _floor_surd(p_st, q_st, sd)
        quotients.append(u)
        p_next = u * q_st - p_st
        q_next = (d - p_next * p_next) // q_st
        p_st, q_st = p_next, q_next
    i0 = states[(p_st, q_st)]
    period = quotients[i0:]
    if len(period) % 2 == 1:
        period = period + period

    # one-period word and the power matching the trace
    w0 = _word_matrix(tuple(period))
    w, k = w0, 1
    while w.trace < t:
        w = w * w0
        k += 1
    if w.trace != t:  # pragma: no cover - guarded by the theory
        raise AssertionError("trace mismatch in RL factorization")
    exps = tuple(period) * k

    # conjugator from the pre-period: x0 = G(x_reduced), G = prod R^{u_i} iota
    g = (1, 0, 0, 1)
    for u in quotients[:i0]:
        g = _raw_mul(_raw_mul(g, _raw_rpow(u)), _IOTA)
    det_g = g[0] * g[3] - g[1] * g[2]
    if det_g == -1:
        g = _raw_mul(g, _IOTA)
    gm = SL2Matrix(*g)
    conj = gm.inverse()
    if det_g == -1:
        # conj*m*conj^-1 is the R<->L swapped word starting with L^{e1};
        # rotate that first block to the back.
        e1 = exps[0]
        exps = exps[1:] + (e1,)
        conj = (L ** (-e1)) * conj
    if m.conjugate_by(conj) != _word_matrix(exps):  # pragma: no cover
        raise AssertionError("RL reduction failed to verify")
    return exps, conj


def rl_word(m: SL2Matrix) -> RLWord:
    """Cyclically-reduced RL exponent word of a hyperbolic matrix.

    Matrices of equal trace sign are conjugate iff their words agree up to
    cyclic rotation.  Negative-trace input is factored through -m.
    """
    if classify(m) is not MatrixClass.HYPERBOLIC:
        raise ValueError("rl_word requires a hyperbolic matrix")
    if m.trace > 0:
        exps, _ = _rl_reduce(m)
        return RLWord(exps, 1)
    exps, _ = _rl_reduce(-m)
    return RLWord(exps, -1)


# ---------------------------------------------------------------------------
# Conjugacy decision
# ---------------------------------------------------------------------------


def _conjugate_hyperbolic(m: SL2Matrix, n: SL2Matrix) -> Optional[SL2Matrix]:
    sign = 1 if m.trace > 0 else -1
    m1 = m if sign == 1 else -m
    n1 = n if sign == 1 else -n
    exps_m, pm = _rl_reduce(m1)
    exps_n, pn = _rl_reduce(n1)
    if len(exps_m) != len(exps_n):
        return None
    for j in range(len(exps_m) // 2):
        if _rotate2(exps_m, j) == exps_n:
            prefix = _I
            for i in range(2 * j):
                prefix = prefix * ((R if i % 2 == 0 else L) ** exps_m[i])
            # word(exps_n) = prefix^-1 * word(exps_m) * prefix
            return pn.inverse() * prefix.inverse() * pm
    return None


def _parabolic_normal_form(m: SL2Matrix) -> tuple[int, SL2Matrix]:
    """For trace-2 m != I: returns (k, P) with P^{-1} m P = (1 k; 0 1)."""
    if m.c != 0:
        v1, v2 = m.d - 1, -m.c
        if v1 == 0 and v2 == 0:  # pragma: no cover
            raise AssertionError("not parabolic")
        g = math.gcd(abs(v1), abs(v2))
        v1, v2 = v1 // g, v2 // g
    else:
        v1, v2 = 1, 0
    # complete (v1,v2) to a determinant-1 basis
    g, w2, w1 = _xgcd(v1, v2)
    assert g == 1
    w1 = -w1
    p = SL2Matrix(v1, w1, v2, w2)
    t = p.inverse() * m * p
    assert (t.a, t.c, t.d) == (1, 0, 1)
    return t.b, p


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _conjugate_parabolic(m: SL2Matrix, n: SL2Matrix) -> Optional[SL2Matrix]:
    sign = 1 if m.trace == 2 else -1
    m1 = m if sign == 1 else -m
    n1 = n if sign == 1 else -n
    km, pm = _parabolic_normal_form(m1)
    kn, pn = _parabolic_normal_form(n1)
    if km != kn:
        return None
    return pn * pm.inverse()


def _elliptic_reduce(m: SL2Matrix) -> tuple[SL2Matrix, SL2Matrix]:
    """Conjugate an elliptic m so its fixed point lies in the fundamental
    domain; returns (reduced, U) with U m U^{-1} = reduced."""
    t = m.trace
    assert m.c != 0
    re = Fraction(m.a - m.d, 2 * m.c)
    im2 = Fraction(4 - t * t, 4 * m.c * m.c)
    u = _I
    cur = m
    s_mat = SL2Matrix(0, -1, 1, 0)
    while True:
        shift = (re + Fraction(1, 2)).__floor__()
        if shift:
            rs = R ** (-shift)
            cur = cur.conjugate_by(rs)
            u = rs * u
            re -= shift
        if re * re + im2 < 1:
            cur = cur.conjugate_by(s_mat)
            u = s_mat * u
            norm = re * re + im2
            re, im2 = -re / norm, im2 / (norm * norm)
        else:
            return cur, u


def _conjugate_elliptic(m: SL2Matrix, n: SL2Matrix) -> Optional[SL2Matrix]:
    rm, um = _elliptic_reduce(m)
    rn, un = _elliptic_reduce(n)
    # reduced fixed points lie in the fundamental domain, so any remaining
    # conjugator has tiny entries
    for p in _small_matrices(3):
        if rm.conjugate_by(p) == rn:
            return un.inverse() * p * um
    return None


def _small_matrices(bound: int) -> Iterator[SL2Matrix]:
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                num = 1 + b * c
                if a != 0:
                    if num % a == 0 and abs(num // a) <= bound:
                        yield SL2Matrix(a, b, c, num // a)
                elif num == 0:
                    for dd in rng:
                        yield SL2Matrix(0, b, c, dd)


def is_conjugate(m: SL2Matrix, n: SL2Matrix) -> Optional[ConjugacyCertificate]:
    """Decide SL(2,Z)-conjugacy; a certificate or None."""
    if m.trace != n.trace:
        return None
    cm = classify(m)
    if cm is not classify(n):
        return None
    if cm in (MatrixClass.IDENTITY, MatrixClass.MINUS_IDENTITY):
        conj = _I if m == n else None
    elif cm is MatrixClass.HYPERBOLIC:
        conj = _conjugate_hyperbolic(m, n)
    elif cm is MatrixClass.PARABOLIC:
        conj = _conjugate_parabolic(m, n)
    else:
        conj = _conjugate_elliptic(m, n)
    if conj is None:
        return None
    return ConjugacyCertificate(source=m, target=n, conjugator=conj)


def is_conjugate_to_inverse(m: SL2Matrix, n: SL2Matrix) -> Optional[ConjugacyCertificate]:
    """Certificate for m ~ n^{-1}, when one exists."""
    return is_conjugate(m, n.inverse())
