"""A tour of exact p-adic arithmetic over the rationals.

Every norm below is an exact Fraction, so each claim is literal equality,
not floating-point agreement.
"""

from fractions import Fraction

from adelicdyn import (
    REAL,
    Place,
    ball_contains,
    padic_distance,
    padic_expansion,
    padic_norm,
    place_norm,
    valuation,
)

# --- valuations and norms ---------------------------------------------------
# A rational factors as p^nu * (unit); the norm is p^(-nu): the more
# divisible by p, the p-adically smaller.

for r in (12, Fraction(1, 9), Fraction(-3, 2)):
    print(f"r = {r}")
    for p in (2, 3, 5):
        print(f"  v_{p}(r) = {valuation(r, p):>3}    |r|_{p} = {padic_norm(r, p)}")
print()

# The same value seen from every place at once: the real norm and finitely
# many p-adic norms differ from 1, everywhere else the norm is exactly 1.
r = Fraction(-10, 21)
places = [REAL] + [Place(p) for p in (2, 3, 5, 7, 11, 13)]
print(f"norms of {r} across places:")
for v in places:
    print(f"  |r|_{v} = {place_norm(r, v)}")
print()

# --- the ultrametric --------------------------------------------------------
# |x + y|_p never exceeds max(|x|_p, |y|_p), and equals it when the two
# norms differ: all triangles are isosceles.

x, y, p = Fraction(5, 4), Fraction(7, 6), 2
print(f"|x|_2 = {padic_norm(x, p)}, |y|_2 = {padic_norm(y, p)}, "
      f"|x+y|_2 = {padic_norm(x + y, p)}")
assert padic_norm(x + y, p) == max(padic_norm(x, p), padic_norm(y, p))
print()

# Distances: 1/3 and 1/5 differ by 2/15, which is 2-adically as large as
# a half.
print(f"d_2(1/3, 1/5) = {padic_distance(Fraction(1, 3), Fraction(1, 5), 2)}")
print()

# --- digit expansions -------------------------------------------------------
# Unlike decimal expansions these grow toward HIGHER powers of p and are
# unique.  Famous example: -1 has all digits p-1.

e = padic_expansion(-1, 5, 8)
print(f"-1 in base 5: digits {list(e.digits)} (nu = {e.nu})")

e = padic_expansion(Fraction(1, 3), 2, 8)
print(f"1/3 in base 2: digits {list(e.digits)}")
partial = e.partial_sum()
print(f"  partial sum = {partial}, |1/3 - partial|_2 = "
      f"{padic_norm(Fraction(1, 3) - partial, 2)} <= 2^-8")
print()

# --- balls ------------------------------------------------------------------
# Any point of a p-adic ball can serve as its center.

center, mu, p = Fraction(0), 0, 3
member = Fraction(5)
assert ball_contains(center, mu, member, p)
for x in (1, 2, Fraction(7, 2), 9, Fraction(1, 3)):
    from_zero = ball_contains(center, mu, x, p)
    from_five = ball_contains(member, mu, x, p)
    assert from_zero == from_five
    print(f"x = {x}: in B_1(0) = {from_zero}, in B_1(5) = {from_five}")
