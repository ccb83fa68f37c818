"""Moebius maps as exact 2x2 matrix calculus.

Composition is the matrix product, iteration is a matrix power, and the
rational fixed points come from an exactly-solved quadratic.
"""

from fractions import Fraction

from adelicdyn import MoebiusMap, cross_ratio, discriminant, fixed_points, modular_family

# --- construction and evaluation ---------------------------------------------
m = MoebiusMap(Fraction(1, 2), 0, 1, 2)  # x -> (x/2) / (x + 2)
print(f"map coefficients: {m.to_dict()}, det = {m.det}, pole at {m.pole}")
print(f"f(1) = {m.apply(1)}, f'(0) = {m.derivative_at(0)}")
print()

# --- the matrix isomorphism ---------------------------------------------------
shift = MoebiusMap(1, 1, 0, 1)   # x + 1
flip = MoebiusMap(1, 0, 1, 1)    # x / (x + 1)
both = shift.compose(flip)
print(f"shift o flip = {both.to_dict()}")
x = Fraction(3, 7)
assert both.apply(x) == shift.apply(flip.apply(x))

# inverse = adjugate matrix; n-th iterate = n-th matrix power
assert m.inverse().apply(m.apply(x)) == x
orbit_value = x
for _ in range(12):
    orbit_value = m.apply(orbit_value)
assert m.power(12).apply(x) == orbit_value
print(f"f^12({x}) = {orbit_value} (matrix power and 12 applications agree)")
print()

# --- fixed points --------------------------------------------------------------
fps = fixed_points(m)
print(f"fixed points of {m.to_dict()}: {fps.to_dict()}")
for xi in fps.points:
    print(f"  f({xi}) = {m.apply(xi)}, multiplier f'({xi}) = {m.derivative_at(xi)}")
# the two multipliers are reciprocal and the product of the points is -b/c
x1, x2 = fps.points
assert m.derivative_at(x1) * m.derivative_at(x2) == 1
assert x1 * x2 == -m.b / m.c
print()

fused = MoebiusMap(3, 2, -2, -1)
print(f"{fused.to_dict()}: discriminant {discriminant(fused)} -> {fixed_points(fused).to_dict()}")
print()

# --- cross-ratio invariance -----------------------------------------------------
pts = (0, 1, 3, 4)
before = cross_ratio(*pts)
after = cross_ratio(*(m.apply(x) for x in pts))
print(f"cross-ratio of {pts}: {before}; after mapping: {after}")
assert before == after
print()

# --- the five unimodular integer families ----------------------------------------
print("integer det-1 families at parameter 2, upper sign:")
for k in (1, 2, 3, 4, 5):
    fam = modular_family(k, 1, 2)
    print(f"  family {k}: {fam.to_dict()}, det = {fam.det}")
