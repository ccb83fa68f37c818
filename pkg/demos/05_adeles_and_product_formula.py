"""Adelic state vectors and the product formula.

An adele carries one component per place with all but finitely many of them
p-integral.  Stepping it through a map is componentwise, and the finite
exceptional support stays finite.  The idele norm ties all places together:
|r|_inf * prod_p |r|_p = 1 for every nonzero rational.
"""

from fractions import Fraction

from adelicdyn import (
    MoebiusMap,
    admissible_bound,
    fixed_points,
    principal_adele,
    product_norm,
    step_adele,
    verify_product_formula,
)

m = MoebiusMap(Fraction(1, 2), 0, 1, 2)

# --- stepping a principal adele --------------------------------------------------
point = principal_adele(1)
print(f"principal adele of 1: {point.to_dict()}")
for n in range(3):
    point = step_adele(m, point)
    print(f"after step {n + 1}: {point.to_dict()}")
print("the listed set grows exactly by the primes dividing the new denominator")
print()

# --- admissibility bound -----------------------------------------------------------
for x0 in (1, 0, Fraction(1, 5)):
    q, primes = admissible_bound(m, x0)
    print(f"x0 = {x0}: |x0|_p and |f(x0)|_p can exceed 1 only on {list(primes)} "
          f"(all fine for p > {q})")
print()

# --- the product formula -------------------------------------------------------------
for r in (6, Fraction(-10, 21), Fraction(1, 1)):
    report = verify_product_formula(r)
    breakdown = ", ".join(f"|r|_{v} = {norm}" for v, norm in report.factors)
    print(f"r = {str(r):>6}: {breakdown} -> product = {report.product}")
print()

# it holds in particular for the map's own data: coefficients and fixed points
values = [c for c in m.coefficients() if c != 0]
values += [xi for xi in fixed_points(m).points if xi != 0]
print("product over all places for the map's coefficients and fixed points:")
for value in values:
    print(f"  r = {str(value):>4}: product = {product_norm(value)}")
