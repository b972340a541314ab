"""Apply each operator to a few test functions."""
from fractions import Fraction

from hus_lab import MonomialPoly, OperatorSpec, apply, evaluate
from hus_lab.operators import Step

e1 = MonomialPoly((0, 1))
e2 = MonomialPoly((0, 0, 1))
x = Fraction(1, 3)

for kind in ("bernstein", "stancu", "kantorovich", "bernstein_schurer", "kantorovich_schurer"):
    image = apply(OperatorSpec(kind, 4, 1 if "schurer" in kind else 0), e2)
    print(f"{kind:20s} e2 at 1/3 -> {evaluate(image, x)}")

print("lorentz n=3 on z^2 at z=2:", evaluate(apply(OperatorSpec("lorentz", 3), e2), 2))

s = apply(OperatorSpec("szasz", 5), e2, 0.4)
print(f"szasz n=5 on x^2 at 0.4: {s.value:.15f} (tail <= {s.tail_bound:.1e}, {s.truncation} terms)")
print("beta n=5 on x at 1/3:", apply(OperatorSpec("beta", 5), e1, x))

step = Step((Fraction(0), Fraction(1, 2), Fraction(1)), (Fraction(0), Fraction(1)))
print("beta n=5 on a unit step at 0.3:", apply(OperatorSpec("beta", 5), step, 0.3))
