"""Check |c_k| <= C(2m, 2k) * max|p| on random polynomials.

Random polynomials are normalized to unit sup norm on [0, 1]; the largest
observed ratio stays under 1 while the Chebyshev polynomial reaches it.
"""
from hus_lab import coefficient_bound_check

print(" m   trials   max ratio        chebyshev ratio")
for m in (2, 4, 8, 12):
    res = coefficient_bound_check(m, 5000, seed=m)
    print(f"{m:2d}   {res.trials:6d}   {res.max_ratio:.12f}   {res.chebyshev_ratio:.12f}")
