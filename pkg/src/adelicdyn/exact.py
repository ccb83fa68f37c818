"""Exact scalar arithmetic.

`fractions.Fraction` already keeps every value in the canonical form the
rest of the library relies on (positive denominator, coprime parts, zero as
0/1), so it is the universal scalar here.  This module adds the pieces the
stdlib does not have: the strict string syntax used by the CLI and all
serialized output, bounded trial-division factorization that fails loudly
instead of mis-factoring, and the rational perfect-square test that gates
rational fixed points.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    FactorizationIncomplete,
    InputError,
    ParseError,
    ZeroDenominator,
    ZeroInput,
)

#: Values accepted wherever a rational is expected; coerced via Fraction().
RationalLike = Fraction | int | str

#: Trial division gives up beyond this unless asked otherwise.
DEFAULT_FACTOR_BOUND = 10**6

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def normalize(num: int, den: int) -> Fraction:
    """num/den in canonical form: positive denominator, coprime, 0 -> 0/1."""
    if den == 0:
        raise ZeroDenominator(f"{num}/0 is not a rational")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse 'n' or 'n/m': sign on the numerator only, no whitespace."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"{text!r} is not of the form 'n' or 'n/m'")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return normalize(num, den)


def format_rational(r: RationalLike) -> str:
    """Canonical string: 'num/den', integers shortened to 'num'."""
    return str(Fraction(r))


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization; primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> Factorization:
    """Factor n by trial division with primes <= bound.

    The result is complete when every prime factor is <= bound or the
    cofactor surviving trial division is provably prime (<= bound**2).
    A larger composite cofactor raises FactorizationIncomplete rather than
    being reported as prime.
    """
    if n == 0:
        raise ZeroInput("0 has no prime factorization")
    if bound < 2:
        raise InputError(f"factor bound must be >= 2, got {bound}")
    sign = 1 if n > 0 else -1
    m = abs(n)
    factors: list[tuple[int, int]] = []

    def strip(p: int) -> None:
        nonlocal m
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))

    # 2 and 3 are always stripped (the bound only limits the wheel); the
    # primality certificate "d*d > m" below needs every candidate below d
    # to have been tried, bound or not
    strip(2)
    strip(3)
    d, gap = 5, 2
    while d <= bound and d * d <= m:
        strip(d)
        d, gap = d + gap, 6 - gap
    if m > 1:
        if d * d > m or m <= bound * bound:
            factors.append((m, 1))
        else:
            raise FactorizationIncomplete(
                f"cofactor {m} of {n} may be composite (bound {bound})"
            )
    return Factorization(sign, tuple(factors))


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    for p in (2, 3):
        if n % p == 0:
            return n == p
    d, gap = 5, 2
    while d * d <= n:
        if n % d == 0:
            return False
        d, gap = d + gap, 6 - gap
    return True


@lru_cache(maxsize=None)
def primes_upto(limit: int) -> tuple[int, ...]:
    """All primes <= limit, ascending (sieve of Eratosthenes)."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_perfect_square(r: RationalLike) -> Fraction | None:
    """The nonnegative rational square root of r, or None if r is no square.

    In lowest terms a rational is a square exactly when numerator and
    denominator both are, so two integer square roots decide it.
    """
    r = Fraction(r)
    if r < 0:
        return None
    num_root = math.isqrt(r.numerator)
    den_root = math.isqrt(r.denominator)
    if num_root * num_root == r.numerator and den_root * den_root == r.denominator:
        return Fraction(num_root, den_root)
    return None
