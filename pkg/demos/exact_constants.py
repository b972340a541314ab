"""Tabulate the exact stability constants of the Schurer-type operators.

The constant for S_{n,p} depends only on m = n + p and is the largest of the
ratios C(2m, 2k) / C(m, k); the Kantorovich variant rescales it by
(n + 1) / (n + p + 1).
"""
from hus_lab import OperatorSpec, closed_K
from hus_lab.exactmath import peak_indices, ratio_sequence

for m in (1, 2, 3, 6):
    seq = ratio_sequence(m)
    print(f"m={m}: ratios {[str(r) for r in seq]}, peak at k in {sorted(peak_indices(m))}")

print()
print(" n  p   K(bernstein_schurer)   K(kantorovich_schurer)")
for n in range(1, 6):
    for p in (0, 1, 3):
        bs = closed_K(OperatorSpec("bernstein_schurer", n, p))
        ks = closed_K(OperatorSpec("kantorovich_schurer", n, p))
        print(f"{n:2d} {p:2d}   {str(bs.K_exact):>20}   {str(ks.K_exact):>22}")

# the classical Bernstein operator is the p = 0 case
b = closed_K(OperatorSpec("bernstein", 4))
print()
print("bernstein n=4:", b.K_exact, "|", b.notes[0])
