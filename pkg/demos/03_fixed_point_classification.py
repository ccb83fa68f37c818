"""Classifying rational fixed points at every place simultaneously.

The punchline: a rational fixed point of a det-1 rational map is p-adically
indifferent at all but finitely many primes, and those primes are read off
the multiplier's numerator and denominator.
"""

from fractions import Fraction

import json

from adelicdyn import (
    CaseTag,
    MoebiusMap,
    Place,
    REAL,
    adelic_report,
    audit_cofinite_indifference,
    case_b_map,
    case_predicted_report,
    classify_at_place,
    exceptional_primes,
    recognize_case,
)

# --- one fixed point, many places ---------------------------------------------
m = MoebiusMap(Fraction(1, 2), 0, 1, 2)
print("classification of xi = 0 under", m.to_dict())
for v in (REAL, Place(2), Place(3), Place(7), Place(101)):
    cls = classify_at_place(m, 0, v)
    print(f"  at {v}: {cls.kind.value} (|f'(0)|_{v} = {cls.multiplier_norm})")
print()

# the non-indifferent places come from the multiplier 1/4 = f'(0)
sets = exceptional_primes(m.derivative_at(0))
print(f"multiplier {sets.generator}: numerator primes {sorted(sets.numerator_primes)}, "
      f"denominator primes {sorted(sets.denominator_primes)}")
print()

# --- full adelic reports ---------------------------------------------------------
print("adelic reports, one per fixed point:")
for report in adelic_report(m):
    print(json.dumps(report.to_dict()))
print()

# --- the six parameter families ---------------------------------------------------
print("recognized families:")
for coeffs in ((Fraction(1, 2), 0, 1, 2), (3, 2, -2, -1), (1, 0, 1, 1)):
    tags = recognize_case(MoebiusMap(*coeffs))
    print(f"  {coeffs}: {sorted(t.value for t in tags)}")
print()

# for a recognized family, the closed-form table reproduces the computed
# report without ever evaluating the derivative
b_map = case_b_map(Fraction(3))  # a = 5/3, b = c = 4/3, d = a
print(f"family B map {b_map.to_dict()} (a - b = {b_map.a - b_map.b})")
predicted = case_predicted_report(CaseTag.B, b_map)
computed = adelic_report(b_map)
assert predicted == computed
for report in computed:
    real = report.real
    listed = {str(c.place): c.kind.value for c in report.finite_exceptions}
    print(f"  xi = {report.xi}: real {real.kind.value}, exceptions {listed}")
print()

# --- auditing cofinite indifference -------------------------------------------------
print("audit of all primes up to 200:")
for audit in audit_cofinite_indifference(m, scan_limit=200):
    print(f"  xi = {audit.xi}: exceptional {list(audit.exceptional)}, "
          f"offenders {list(audit.offenders)} -> ok = {audit.ok}")
