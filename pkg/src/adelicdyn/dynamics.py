"""Exact orbits, Siegel disks, basin sweeps, adele steps and the product
formula.

Iteration never leaves the rationals: every orbit point and every distance
to the reference fixed point is an exact Fraction, so statements like "the
sphere is invariant" are literal equality checks.  A bit-size guard aborts
runaway orbits instead of falling back to floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .classification import Stability, classify_at_place
from .errors import (
    CIsZero,
    NonIntegralTail,
    NotAFixedPoint,
    NotIndifferent,
    PoleAtPlace,
    PoleInput,
    TooShort,
    ZeroInput,
)
from .exact import DEFAULT_FACTOR_BOUND, RationalLike, factorize
from .moebius import MoebiusMap
from .padic import REAL, Place, place_norm

DEFAULT_MAX_STEPS = 10_000
DEFAULT_BIT_GUARD = 10**6
DEFAULT_WINDOW = 16
#: An orbit counts as converged once it is this close (library default).
CONVERGENCE_THRESHOLD = Fraction(1, 2**40)


class Termination(str, Enum):
    MAX_STEPS = "max_steps"
    POLE_HIT = "pole_hit"
    OVERFLOW_GUARD = "overflow_guard"
    CONVERGED = "converged"


class Step(NamedTuple):
    n: int
    x: Fraction
    dist: Fraction


@dataclass(frozen=True)
class TrajectoryRecord:
    """Exact orbit at one place with per-step distance to a fixed point."""

    place: Place
    xi: Fraction
    steps: tuple[Step, ...]
    terminated_by: Termination

    def distances(self) -> list[Fraction]:
        return [s.dist for s in self.steps]

    def to_json_lines(self) -> str:
        """One {n, x, dist} object per line."""
        return "\n".join(
            json.dumps({"n": s.n, "x": str(s.x), "dist": str(s.dist)})
            for s in self.steps
        )


def iterate_at_place(
    m: MoebiusMap,
    x0: RationalLike,
    xi: RationalLike,
    v: Place,
    max_steps: int = DEFAULT_MAX_STEPS,
    bit_guard: int = DEFAULT_BIT_GUARD,
    threshold: Fraction = CONVERGENCE_THRESHOLD,
    window: int = DEFAULT_WINDOW,
) -> TrajectoryRecord:
    """Run x, f(x), f(f(x)), ... recording |x_n - xi|_v at every step.

    Poles are recorded as a termination rather than raised, so a sweep over
    many starting points never aborts.  The orbit stops as converged when
    it lands exactly on xi, or once the distance has strictly decreased for
    `window` consecutive steps and sits below `threshold` (everything after
    is fixed-point approach, and sizes would grow without bound).
    """
    x0, xi = Fraction(x0), Fraction(xi)
    if m.apply(xi) != xi:
        raise NotAFixedPoint(f"{xi} is not fixed by the map")
    pole = m.pole
    steps = [Step(0, x0, place_norm(x0 - xi, v))]
    terminated = Termination.MAX_STEPS
    x = x0
    decreasing_run = 0
    if x == xi:
        terminated = Termination.CONVERGED
    else:
        for n in range(1, max_steps + 1):
            if x == pole:
                terminated = Termination.POLE_HIT
                break
            x = m.apply(x)
            if (
                x.numerator.bit_length() > bit_guard
                or x.denominator.bit_length() > bit_guard
            ):
                terminated = Termination.OVERFLOW_GUARD
                break
            dist = place_norm(x - xi, v)
            decreasing_run = decreasing_run + 1 if dist < steps[-1].dist else 0
            steps.append(Step(n, x, dist))
            if x == xi or (dist < threshold and decreasing_run >= window):
                terminated = Termination.CONVERGED
                break
    return TrajectoryRecord(v, xi, tuple(steps), terminated)


class VerdictKind(str, Enum):
    CONVERGES = "converges_to_fixed_point"
    ESCAPES = "escapes"
    SPHERE_INVARIANT = "sphere_invariant"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class BehaviorEvidence:
    """Window statistics the verdict was based on."""

    window: int
    strictly_decreasing: bool
    strictly_increasing: bool
    constant_run: int
    final_dist: Fraction
    start_inside_radius: bool | None

    def to_dict(self) -> dict:
        return {
            "window": self.window,
            "strictly_decreasing": self.strictly_decreasing,
            "strictly_increasing": self.strictly_increasing,
            "constant_run": self.constant_run,
            "final_dist": str(self.final_dist),
            "start_inside_radius": self.start_inside_radius,
        }


@dataclass(frozen=True)
class BehaviorVerdict:
    kind: VerdictKind
    evidence: BehaviorEvidence

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "evidence": self.evidence.to_dict()}


def _locality_radius(m: MoebiusMap, xi: Fraction, v: Place) -> Fraction | None:
    """|c xi + d|_v / |c|_v, the distance from xi to the pole; None if c = 0."""
    if m.c == 0:
        return None
    return place_norm(m.c * xi + m.d, v) / place_norm(m.c, v)


def _trailing_constant_run(dists: list[Fraction]) -> int:
    run = 1
    for i in range(len(dists) - 1, 0, -1):
        if dists[i - 1] != dists[i]:
            break
        run += 1
    return run


def _window_evidence(
    dists: list[Fraction], window: int, inside: bool | None
) -> BehaviorEvidence:
    tail = dists[-(window + 1) :]
    return BehaviorEvidence(
        window=window,
        strictly_decreasing=len(tail) > 1
        and all(b < a for a, b in zip(tail, tail[1:])),
        strictly_increasing=len(tail) > 1
        and all(b > a for a, b in zip(tail, tail[1:])),
        constant_run=_trailing_constant_run(dists),
        final_dist=dists[-1],
        start_inside_radius=inside,
    )


def detect_behavior(
    t: TrajectoryRecord,
    m: MoebiusMap,
    window: int = DEFAULT_WINDOW,
    threshold: Fraction = CONVERGENCE_THRESHOLD,
) -> BehaviorVerdict:
    """Classify what the recorded orbit did.

    Converged means the distances over the last `window` steps strictly
    decrease and end below `threshold` (or the orbit landed exactly on the
    fixed point).  Sphere-invariant means the distance never changed at
    all.  Escape is only claimed for orbits that started strictly inside
    the locality radius, where repulsion is actually guaranteed; strict
    growth from further out stays undetermined.
    """
    dists = t.distances()
    rho = _locality_radius(m, t.xi, t.place)
    inside = None if rho is None else dists[0] < rho
    if t.terminated_by is Termination.CONVERGED:
        used = min(window, len(dists) - 1)
        return BehaviorVerdict(
            VerdictKind.CONVERGES, _window_evidence(dists, used, inside)
        )
    if len(dists) < window + 1:
        raise TooShort(
            f"need at least {window + 1} recorded steps, have {len(dists)}"
        )
    evidence = _window_evidence(dists, window, inside)
    if len(set(dists)) == 1:
        return BehaviorVerdict(VerdictKind.SPHERE_INVARIANT, evidence)
    if evidence.strictly_decreasing and dists[-1] < threshold:
        return BehaviorVerdict(VerdictKind.CONVERGES, evidence)
    if evidence.strictly_increasing and inside:
        return BehaviorVerdict(VerdictKind.ESCAPES, evidence)
    return BehaviorVerdict(VerdictKind.UNDETERMINED, evidence)


def local_multiplier_radius(m: MoebiusMap, xi: RationalLike, p: int) -> Fraction:
    """Radius of exact linearization at a finite place.

    From f(x) - xi = (x - xi) det / ((cx + d)(c xi + d)): strictly inside
    |x - xi|_p < |c xi + d|_p / |c|_p the ultrametric forces
    |cx + d|_p = |c xi + d|_p, so one step scales the distance by exactly
    |f'(xi)|_p.
    """
    xi = Fraction(xi)
    if m.c == 0:
        raise CIsZero("locality radius needs c != 0")
    if m.c * xi + m.d == 0:
        raise PoleInput(f"{xi} is the pole of the map")
    return _locality_radius(m, xi, Place(p))


def siegel_max_radius(m: MoebiusMap, xi: RationalLike, p: int) -> Fraction:
    """Largest radius within which every sphere around xi is invariant.

    Defined only where xi is indifferent; equals the linearization radius,
    since there |f(x) - xi|_p = |x - xi|_p exactly.
    """
    xi = Fraction(xi)
    cls = classify_at_place(m, xi, Place(p))
    if cls.kind is not Stability.INDIFFERENT:
        raise NotIndifferent(
            f"|f'({xi})|_{p} = {cls.multiplier_norm}, not 1"
        )
    return local_multiplier_radius(m, xi, p)


@dataclass(frozen=True)
class BasinPoint:
    x0: Fraction
    verdict: BehaviorVerdict
    steps_used: int

    def to_dict(self) -> dict:
        return {
            "x0": str(self.x0),
            "verdict": self.verdict.to_dict(),
            "steps_used": self.steps_used,
        }


def basin_sample(
    m: MoebiusMap,
    xi: RationalLike,
    v: Place,
    height: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    window: int = DEFAULT_WINDOW,
    bit_guard: int = DEFAULT_BIT_GUARD,
) -> list[BasinPoint]:
    """Verdict for every canonical fraction num/den with |num|, den <= height.

    Enumeration is by denominator then numerator, each rational exactly
    once, the pole skipped; a trajectory too short for the window (early
    pole hit or overflow) is recorded as undetermined rather than raised.
    """
    xi = Fraction(xi)
    pole = m.pole
    out = []
    for den in range(1, height + 1):
        for num in range(-height, height + 1):
            if math.gcd(abs(num), den) != 1:
                continue
            x0 = Fraction(num, den)
            if pole is not None and x0 == pole:
                continue
            record = iterate_at_place(
                m, x0, xi, v, max_steps, bit_guard, window=window
            )
            try:
                verdict = detect_behavior(record, m, window)
            except TooShort:
                dists = record.distances()
                verdict = BehaviorVerdict(
                    VerdictKind.UNDETERMINED,
                    _window_evidence(dists, len(dists) - 1, None),
                )
            out.append(BasinPoint(x0, verdict, len(record.steps) - 1))
    return out


def admissible_bound(
    m: MoebiusMap, x0: RationalLike, bound: int = DEFAULT_FACTOR_BOUND
) -> tuple[int, tuple[int, ...]]:
    """Primes where x0 or f(x0) is non-integral, and their maximum q.

    For every prime p > q both |x0|_p <= 1 and |f(x0)|_p <= 1, which is the
    per-point bound an adelic step needs; q is 1 when both values are
    already integral everywhere.  Needs c != 0 and d != 0.
    """
    if m.c == 0:
        raise CIsZero("the admissibility bound assumes c != 0")
    if m.d == 0:
        raise ZeroInput("the admissibility bound assumes d != 0")
    x0 = Fraction(x0)
    image = m.apply(x0)
    primes = set(factorize(x0.denominator, bound).primes())
    primes.update(factorize(image.denominator, bound).primes())
    return (max(primes) if primes else 1, tuple(sorted(primes)))


@dataclass(frozen=True)
class AdelePoint:
    """Adele with rational components.

    Explicit values at the real place and at finitely many listed primes;
    at every unlisted prime the component is the shared rational
    `elsewhere`, which must be p-integral there (checked at construction,
    which is what keeps the non-integral support finite).
    """

    real: Fraction
    finite: dict[int, Fraction]
    elsewhere: Fraction

    def __post_init__(self):
        object.__setattr__(self, "real", Fraction(self.real))
        object.__setattr__(
            self,
            "finite",
            {p: Fraction(x) for p, x in self.finite.items()},
        )
        object.__setattr__(self, "elsewhere", Fraction(self.elsewhere))
        for p in self.finite:
            Place(p)  # validates primality
        for p in factorize(self.elsewhere.denominator).primes():
            if p not in self.finite:
                raise NonIntegralTail(
                    f"|{self.elsewhere}|_{p} > 1 but {p} is not listed"
                )

    @property
    def integral_elsewhere(self) -> bool:
        """True by construction; the invariant is enforced in __post_init__."""
        return True

    def listed_primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.finite))

    def component(self, v: Place) -> Fraction:
        if v.is_real:
            return self.real
        return self.finite.get(v.p, self.elsewhere)

    def to_dict(self) -> dict:
        return {
            "real": str(self.real),
            "components": [
                {"p": p, "x": str(self.finite[p])} for p in self.listed_primes()
            ],
            "elsewhere": str(self.elsewhere),
        }


def principal_adele(r: RationalLike, bound: int = DEFAULT_FACTOR_BOUND) -> AdelePoint:
    """The diagonal embedding of one rational, listing its denominator primes."""
    r = Fraction(r)
    listed = factorize(r.denominator, bound).primes()
    return AdelePoint(real=r, finite={p: r for p in listed}, elsewhere=r)


def step_adele(
    m: MoebiusMap, x: AdelePoint, bound: int = DEFAULT_FACTOR_BOUND
) -> AdelePoint:
    """Apply the map componentwise, growing the listed set as needed.

    Any prime where the shared tail value stops being integral after the
    step becomes listed, so the output satisfies the adele restriction
    again.
    """
    pole = m.pole
    if pole is not None:
        if x.real == pole:
            raise PoleAtPlace(REAL)
        for p in x.listed_primes():
            if x.finite[p] == pole:
                raise PoleAtPlace(Place(p))
        if x.elsewhere == pole:
            raise PoleAtPlace(None, "pole hit at every unlisted place")
    new_elsewhere = m.apply(x.elsewhere)
    new_finite = {p: m.apply(xp) for p, xp in x.finite.items()}
    for p in factorize(new_elsewhere.denominator, bound).primes():
        if p not in new_finite:
            new_finite[p] = new_elsewhere
    return AdelePoint(
        real=m.apply(x.real), finite=new_finite, elsewhere=new_elsewhere
    )


def product_norm(r: RationalLike, bound: int = DEFAULT_FACTOR_BOUND) -> Fraction:
    """|r| over the ideles: |r|_inf times |r|_p at every prime dividing r."""
    r = Fraction(r)
    if r == 0:
        raise ZeroInput("the idele norm needs r != 0")
    result = abs(r)
    for p, e in factorize(r.numerator, bound).factors:
        result *= Fraction(p) ** -e
    for p, e in factorize(r.denominator, bound).factors:
        result *= Fraction(p) ** e
    return result


@dataclass(frozen=True)
class ProductFormulaReport:
    """Per-place factors of |r|; their product is 1 for every nonzero r."""

    r: Fraction
    factors: tuple[tuple[Place, Fraction], ...]
    product: Fraction

    @property
    def holds(self) -> bool:
        return self.product == 1

    def to_dict(self) -> dict:
        return {
            "r": str(self.r),
            "factors": [
                {"place": str(v), "norm": str(norm)} for v, norm in self.factors
            ],
            "product": str(self.product),
            "holds": self.holds,
        }


def verify_product_formula(
    r: RationalLike, bound: int = DEFAULT_FACTOR_BOUND
) -> ProductFormulaReport:
    """Evidence that |r|_inf * prod_p |r|_p = 1: the factor at every place
    where the norm differs from 1, and their exact product."""
    r = Fraction(r)
    if r == 0:
        raise ZeroInput("the product formula needs r != 0")
    factors: list[tuple[Place, Fraction]] = [(REAL, abs(r))]
    finite = {}
    for p, e in factorize(r.numerator, bound).factors:
        finite[p] = Fraction(p) ** -e
    for p, e in factorize(r.denominator, bound).factors:
        finite[p] = Fraction(p) ** e
    for p in sorted(finite):
        factors.append((Place(p), finite[p]))
    product = Fraction(1)
    for _, norm in factors:
        product *= norm
    return ProductFormulaReport(r=r, factors=tuple(factors), product=product)
