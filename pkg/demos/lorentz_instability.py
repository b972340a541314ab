"""Why the Lorentz operator is not stable.

L_n maps z^j to lambda_j z^j with lambda_j = prod_{i<j} (1 - i/n). The smallest
nonzero eigenvalue lambda_n = n!/n^n makes the inverse blow up, and z^(n+1)
lies in the kernel.
"""
from hus_lab import lorentz_instability_report

for n in (2, 3, 5, 8, 12):
    r = lorentz_instability_report(n)
    print(f"n={n:2d}: max 1/lambda = {str(r.max_finite_reciprocal):>22} at j={r.argmax_j}, "
          f"kernel contains z^{r.kernel_witness}")

r = lorentz_instability_report(4)
for j, lam, recip in r.rows:
    print(f"  j={j}: lambda={lam}, 1/lambda={recip if recip is not None else 'divergent'}")
