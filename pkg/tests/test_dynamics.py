"""Exact orbits, behavior verdicts, Siegel disks, adeles, product formula."""

import json
import random
from fractions import Fraction

import pytest

from adelicdyn.dynamics import (
    AdelePoint,
    Termination,
    VerdictKind,
    admissible_bound,
    basin_sample,
    detect_behavior,
    iterate_at_place,
    local_multiplier_radius,
    principal_adele,
    product_norm,
    siegel_max_radius,
    step_adele,
    verify_product_formula,
)
from adelicdyn.errors import (
    CIsZero,
    NonIntegralTail,
    NotAFixedPoint,
    NotIndifferent,
    PoleAtPlace,
    TooShort,
    ZeroInput,
)
from adelicdyn.moebius import MoebiusMap, fixed_points
from adelicdyn.padic import Place, REAL, padic_norm, place_norm
from helpers import rand_rational, rand_square_disc_map

CASE_A_MAP = MoebiusMap(Fraction(1, 2), 0, 1, 2)
CASE_C_MAP = MoebiusMap(3, 2, -2, -1)


def recurrence_oracle(m, x0, n):
    orbit = [Fraction(x0)]
    for _ in range(n):
        x = orbit[-1]
        orbit.append((m.a * x + m.b) / (m.c * x + m.d))
    return orbit


def test_real_orbit_example():
    record = iterate_at_place(CASE_A_MAP, 1, 0, REAL, max_steps=3)
    expected = recurrence_oracle(CASE_A_MAP, 1, 3)
    assert expected == [1, Fraction(1, 6), Fraction(1, 26), Fraction(1, 106)]
    assert [s.x for s in record.steps] == expected
    dists = record.distances()
    assert all(b < a for a, b in zip(dists, dists[1:]))
    assert record.terminated_by is Termination.MAX_STEPS


def test_padic_orbit_example():
    record = iterate_at_place(CASE_A_MAP, 3, 0, Place(3), max_steps=2)
    assert [s.x for s in record.steps] == [3, Fraction(3, 10), Fraction(3, 46)]
    assert record.distances() == [Fraction(1, 3)] * 3


def test_orbit_from_fixed_point_is_converged():
    record = iterate_at_place(CASE_A_MAP, 0, 0, REAL, max_steps=10)
    assert record.terminated_by is Termination.CONVERGED
    assert record.distances() == [Fraction(0)]


def test_orbit_validates_fixed_point():
    with pytest.raises(NotAFixedPoint):
        iterate_at_place(CASE_A_MAP, 1, 1, REAL, max_steps=5)


def test_pole_start_recorded_in_band():
    record = iterate_at_place(CASE_A_MAP, -2, 0, REAL, max_steps=5)
    assert record.terminated_by is Termination.POLE_HIT
    assert len(record.steps) == 1
    assert record.steps[0].x == -2


def test_pole_hit_mid_orbit():
    # f(-8/5) = -2, the pole
    assert CASE_A_MAP.apply(Fraction(-8, 5)) == -2
    record = iterate_at_place(CASE_A_MAP, Fraction(-8, 5), 0, REAL, max_steps=10)
    assert record.terminated_by is Termination.POLE_HIT
    assert [s.x for s in record.steps] == [Fraction(-8, 5), Fraction(-2)]


def test_overflow_guard_stops_growth():
    record = iterate_at_place(CASE_A_MAP, 1, 0, REAL, max_steps=100, bit_guard=20)
    assert record.terminated_by is Termination.OVERFLOW_GUARD
    assert len(record.steps) < 20
    for s in record.steps:
        assert s.x.denominator.bit_length() <= 20


def test_threshold_convergence_terminates_early():
    record = iterate_at_place(CASE_A_MAP, 1, 0, REAL, max_steps=10_000)
    assert record.terminated_by is Termination.CONVERGED
    assert record.steps[-1].dist < Fraction(1, 2**40)
    assert len(record.steps) < 100


def test_orbit_matches_matrix_powers():
    rng = random.Random(109)
    for _ in range(30):
        m = rand_square_disc_map(rng, height=10)
        xi = fixed_points(m).points[0]
        x0 = rand_rational(rng, 10)
        record = iterate_at_place(m, x0, xi, REAL, max_steps=12)
        for step in record.steps:
            assert m.power(step.n).apply(x0) == step.x


def test_detect_converges_real():
    record = iterate_at_place(CASE_A_MAP, 1, 0, REAL, max_steps=200)
    verdict = detect_behavior(record, CASE_A_MAP)
    assert verdict.kind is VerdictKind.CONVERGES


def test_detect_sphere_invariant():
    record = iterate_at_place(CASE_A_MAP, 3, 0, Place(3), max_steps=40)
    verdict = detect_behavior(record, CASE_A_MAP)
    assert verdict.kind is VerdictKind.SPHERE_INVARIANT
    assert verdict.evidence.constant_run == 41


def test_detect_escapes_padic():
    # |f'(0)|_2 = 4: inside the locality radius distances grow exactly 4x
    x0 = Fraction(2**40)
    record = iterate_at_place(CASE_A_MAP, x0, 0, Place(2), max_steps=18)
    dists = record.distances()
    assert dists[0] == Fraction(1, 2**40)
    assert all(b == 4 * a for a, b in zip(dists, dists[1:]))
    verdict = detect_behavior(record, CASE_A_MAP)
    assert verdict.kind is VerdictKind.ESCAPES
    assert verdict.evidence.start_inside_radius is True


def test_detect_escapes_real():
    # -3/2 is the real repeller; start inside |c xi + d| / |c| = 1/2 of it
    xi = Fraction(-3, 2)
    record = iterate_at_place(CASE_A_MAP, Fraction(-5, 4), xi, REAL, max_steps=30)
    verdict = detect_behavior(record, CASE_A_MAP)
    assert verdict.kind is VerdictKind.ESCAPES


def test_detect_undetermined_outside_radius():
    record = iterate_at_place(CASE_A_MAP, 1, 0, Place(2), max_steps=30)
    verdict = detect_behavior(record, CASE_A_MAP)
    assert verdict.kind is VerdictKind.UNDETERMINED


def test_detect_too_short():
    record = iterate_at_place(CASE_A_MAP, 3, 0, Place(3), max_steps=5)
    with pytest.raises(TooShort):
        detect_behavior(record, CASE_A_MAP, window=16)


def test_local_multiplier_radius_examples():
    assert local_multiplier_radius(CASE_A_MAP, 0, 2) == Fraction(1, 2)
    assert local_multiplier_radius(CASE_A_MAP, 0, 3) == 1
    assert local_multiplier_radius(CASE_A_MAP, 0, 5) == 1
    with pytest.raises(CIsZero):
        local_multiplier_radius(MoebiusMap(2, 1, 0, 1), 0, 3)


def test_linearization_law():
    rng = random.Random(113)
    for _ in range(10):
        m = rand_square_disc_map(rng, height=12)
        xi = fixed_points(m).points[-1]
        p = rng.choice((2, 3, 5, 7))
        rho = local_multiplier_radius(m, xi, p)
        multiplier_norm = padic_norm(m.derivative_at(xi), p)
        # strictly inside the radius: xi + p^k u with u p-integral, p^-k < rho
        k = 1
        while Fraction(p) ** -k >= rho:
            k += 1
        for _ in range(100):
            num = rng.choice((1, -1)) * rng.randint(1, 400)
            den = rng.randint(1, 400)
            if den % p == 0:
                den += 1
            offset = Fraction(p) ** (k + rng.randint(0, 3)) * Fraction(num, den)
            x = xi + offset
            assert padic_norm(x - xi, p) < rho
            lhs = padic_norm(m.apply(x) - xi, p)
            assert lhs == multiplier_norm * padic_norm(x - xi, p)


def test_siegel_max_radius_examples():
    assert siegel_max_radius(CASE_A_MAP, 0, 3) == 1
    assert siegel_max_radius(CASE_C_MAP, -1, 5) == 1
    with pytest.raises(NotIndifferent):
        siegel_max_radius(CASE_A_MAP, 0, 2)


def test_siegel_spheres_are_invariant():
    rho = siegel_max_radius(CASE_A_MAP, 0, 3)
    for x0 in (3, Fraction(3, 2), 9, Fraction(9, 4), 6):
        start = place_norm(x0, Place(3))
        assert start < rho
        record = iterate_at_place(CASE_A_MAP, x0, 0, Place(3), max_steps=50)
        assert set(record.distances()) == {start}


def test_basin_real_sample():
    points = basin_sample(CASE_A_MAP, 0, REAL, height=3, max_steps=200)
    assert len(points) == 14  # pole -2 skipped
    xs = [p.x0 for p in points]
    assert xs == sorted(set(xs), key=lambda r: (r.denominator, r.numerator))
    by_x0 = {p.x0: p for p in points}
    # the other fixed point sits on an exactly invariant sphere around 0
    assert by_x0[Fraction(-3, 2)].verdict.kind is VerdictKind.SPHERE_INVARIANT
    for p in points:
        if p.x0 == Fraction(-3, 2):
            continue
        assert p.verdict.kind is VerdictKind.CONVERGES


def test_basin_padic_sample():
    points = basin_sample(CASE_A_MAP, 0, Place(2), height=2, max_steps=60)
    verdicts = {p.x0: p.verdict.kind for p in points}
    assert verdicts == {
        Fraction(-1): VerdictKind.UNDETERMINED,
        Fraction(0): VerdictKind.CONVERGES,
        Fraction(1): VerdictKind.UNDETERMINED,
        Fraction(2): VerdictKind.UNDETERMINED,
        Fraction(-1, 2): VerdictKind.SPHERE_INVARIANT,
        Fraction(1, 2): VerdictKind.SPHERE_INVARIANT,
    }


def test_basin_height_zero_is_empty():
    assert basin_sample(CASE_A_MAP, 0, REAL, height=0) == []


def test_admissible_bound_examples():
    q, primes = admissible_bound(CASE_A_MAP, 1)
    assert (q, primes) == (3, (2, 3))  # f(1) = 1/6
    q, primes = admissible_bound(CASE_A_MAP, 0)
    assert (q, primes) == (1, ())
    q, primes = admissible_bound(CASE_A_MAP, Fraction(1, 5))
    assert 5 in primes
    assert (q, primes) == (11, (2, 5, 11))  # f(1/5) = 1/22


def test_admissible_bound_guarantee():
    rng = random.Random(127)
    for _ in range(50):
        m = rand_square_disc_map(rng, height=15)
        if m.d == 0:
            continue
        x0 = rand_rational(rng, 25)
        if m.c * x0 + m.d == 0:
            continue
        q, primes = admissible_bound(m, x0)
        image = m.apply(x0)
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
            if p > q:
                assert padic_norm(x0, p) <= 1
                assert padic_norm(image, p) <= 1


def test_admissible_bound_preconditions():
    with pytest.raises(CIsZero):
        admissible_bound(MoebiusMap(1, 1, 0, 1), 0)
    with pytest.raises(ZeroInput):
        admissible_bound(MoebiusMap(1, 1, 1, 0), 1)


def test_principal_adele_and_step():
    point = principal_adele(1)
    assert point.listed_primes() == ()
    stepped = step_adele(CASE_A_MAP, point)
    assert stepped.real == Fraction(1, 6)
    assert stepped.elsewhere == Fraction(1, 6)
    assert stepped.listed_primes() == (2, 3)
    assert all(x == Fraction(1, 6) for x in stepped.finite.values())


def test_step_adele_fixed_point_is_unchanged():
    point = principal_adele(0)
    assert step_adele(CASE_A_MAP, point) == point


def test_step_adele_pole_at_listed_place():
    point = AdelePoint(real=1, finite={2: Fraction(-2)}, elsewhere=1)
    with pytest.raises(PoleAtPlace) as info:
        step_adele(CASE_A_MAP, point)
    assert info.value.place == Place(2)


def test_adele_tail_must_be_integral():
    with pytest.raises(NonIntegralTail):
        AdelePoint(real=1, finite={}, elsewhere=Fraction(1, 2))
    # listing the offending prime fixes it
    AdelePoint(real=1, finite={2: Fraction(1, 2)}, elsewhere=Fraction(1, 2))


def test_step_adele_keeps_restriction():
    rng = random.Random(131)
    for _ in range(40):
        m = rand_square_disc_map(rng, height=9)
        r = rand_rational(rng, 9)
        if m.c * r + m.d == 0:
            continue
        point = principal_adele(r)
        for _ in range(3):
            try:
                point = step_adele(m, point)
            except PoleAtPlace:
                break
            # constructor re-checks the invariant; also spot-check components
            assert point.integral_elsewhere
            for p in point.listed_primes():
                assert point.component(Place(p)) == point.finite[p]
            assert point.component(Place(101)) == point.elsewhere


def test_product_norm_examples():
    assert product_norm(6) == 1
    assert product_norm(Fraction(-10, 21)) == 1
    assert product_norm(1) == 1
    with pytest.raises(ZeroInput):
        product_norm(0)


def test_product_formula_breakdown():
    report = verify_product_formula(Fraction(-3, 2))
    assert report.holds
    assert report.factors == (
        (REAL, Fraction(3, 2)),
        (Place(2), Fraction(2)),
        (Place(3), Fraction(1, 3)),
    )
    trivial = verify_product_formula(1)
    assert trivial.factors == ((REAL, Fraction(1)),)
    assert trivial.product == 1


def test_trajectory_json_lines():
    record = iterate_at_place(CASE_A_MAP, 3, 0, Place(3), max_steps=2)
    lines = record.to_json_lines().splitlines()
    assert len(lines) == 3
    first = json.loads(lines[0])
    assert first == {"n": 0, "x": "3", "dist": "1/3"}
