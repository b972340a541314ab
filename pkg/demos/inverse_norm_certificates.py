"""Lower bounds for the inverse norm of S_{n,p} and their certificate.

Random targets q give ||f_q|| / ||q|| well below the constant; the Chebyshev
target attains it exactly.
"""
from hus_lab import OperatorSpec, chebyshev_bernstein, closed_K, empirical_inverse_norm, preimage_bs

spec = OperatorSpec("bernstein_schurer", 2, 1)
K = closed_K(spec)
print("closed form:", K.K_exact)

for trials in (10, 100, 1000, 10000):
    res = empirical_inverse_norm(spec, trials, seed=42, include_certificate=False)
    print(f"{trials:6d} random targets: {res.value:.6f}")

res = empirical_inverse_norm(spec, 1000, seed=42, include_certificate=True)
print("with certificate:", res.value)

g = preimage_bs(2, 1, chebyshev_bernstein(3))
print("preimage samples of T_3(2x - 1):", [str(v) for v in g.values], "at", [str(t) for t in g.nodes])
