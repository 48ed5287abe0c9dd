"""Shared test oracles.

The brute-force conjugator search is deliberately independent of the
production RL/normal-form machinery and is used only as an oracle here.
"""

from __future__ import annotations

import pytest

from tpqr.sl2z import SL2Matrix


def mat2(rows):
    (a, b), (c, d) = rows
    return SL2Matrix(a, b, c, d)


def mul2(x, y):
    """Independent 2x2 integer product on row-pair tuples."""
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def brute_conjugator(m: SL2Matrix, n: SL2Matrix, bound: int = 20):
    """Search P with entries in [-bound, bound], det 1, P m P^-1 = n."""
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                num = 1 + b * c
                if a != 0:
                    if num % a:
                        continue
                    d = num // a
                    if abs(d) > bound:
                        continue
                    p = SL2Matrix(a, b, c, d)
                    if p * m == n * p:
                        return p
                elif num == 0:
                    for d in rng:
                        p = SL2Matrix(0, b, c, d)
                        if p * m == n * p:
                            return p
    return None


@pytest.fixture(scope="session")
def minimal_params_237():
    from tpqr.numcheck import FibrationParams

    return FibrationParams.minimal(2, 3, 7)
