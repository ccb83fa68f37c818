"""Shared generators and oracles for the test suite.

Randomized tests draw from seeded random.Random instances, so every run
checks the same sample; the map generator below parametrizes det-1 maps by
an eigenvalue t, which guarantees a rational-square discriminant
(trace = t + 1/t, so trace^2 - 4 = (t - 1/t)^2).
"""

from __future__ import annotations

import random
from fractions import Fraction

from adelicdyn import MoebiusMap


def rand_rational(
    rng: random.Random, height: int, nonzero: bool = False
) -> Fraction:
    """Uniform-ish canonical fraction with |num| <= height, den <= height."""
    while True:
        r = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if nonzero and r == 0:
            continue
        return r


def rand_nonzero(rng: random.Random, height: int) -> Fraction:
    return rand_rational(rng, height, nonzero=True)


def rand_square_disc_map(
    rng: random.Random, height: int = 30, fused: bool = False
) -> MoebiusMap:
    """Random det-1 map with c != 0 and rational fixed points.

    fused=True pins the eigenvalue t to +/-1 (discriminant zero); otherwise
    t avoids +/-1 so the fixed points stay distinct.
    """
    if fused:
        t = Fraction(rng.choice((1, -1)))
    else:
        while True:
            t = rand_nonzero(rng, height)
            if t not in (1, -1):
                break
    trace = t + 1 / t
    a = rand_rational(rng, height)
    c = rand_nonzero(rng, height)
    d = trace - a
    b = (a * d - 1) / c
    return MoebiusMap(a, b, c, d)


def rand_map(rng: random.Random, height: int = 20) -> MoebiusMap:
    """Random nonsingular map, determinant unconstrained."""
    while True:
        a, b, c, d = (rand_rational(rng, height) for _ in range(4))
        if a * d - b * c != 0:
            return MoebiusMap(a, b, c, d)


def trial_division_oracle(n: int) -> list[tuple[int, int]]:
    """Plain ascending trial division, independent of the library's wheel."""
    n = abs(n)
    out = []
    p = 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    return out


def valuation_oracle(r: Fraction, p: int) -> int:
    """Definition-based search: the unique nu with r / p^nu a p-unit."""
    assert r != 0
    for nu in range(-128, 129):
        unit = r / Fraction(p) ** nu
        if unit.numerator % p != 0 and unit.denominator % p != 0:
            return nu
    raise AssertionError("valuation outside oracle search range")
