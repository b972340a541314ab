"""Convert polynomials to the Lorentz form sum c_k x^k (1 - x)^(m - k).

The Chebyshev polynomial T_m(2x - 1) has coefficients (-1)^(m-k) C(2m, 2k),
which is where the coefficient bound is attained.
"""
from fractions import Fraction

from hus_lab import MonomialPoly, chebyshev_bernstein, evaluate, from_bernstein, to_bernstein

p = MonomialPoly((1, -8, 8))  # T_2(2x - 1)
for m in (2, 3, 5):
    print(f"8x^2 - 8x + 1 at degree {m}:", [str(c) for c in to_bernstein(p, m).coeffs])

for m in range(1, 6):
    cheb = chebyshev_bernstein(m)
    mono = from_bernstein(cheb)
    print(f"T_{m}(2x-1): lorentz {[int(c) for c in cheb.coeffs]}, monomial {[int(c) for c in mono.coeffs]}")

x = Fraction(1, 3)
print("T_5(2/3 - 1) =", evaluate(chebyshev_bernstein(5), x))
