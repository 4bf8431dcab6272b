"""Functions on the Heisenberg group killed by X1^2 and X2^2.

Solves the problem exactly, prints the certified basis and checks by hand
that the two cubic elements are genuine solutions on which X3^2 does not vanish.
"""
from nilpoly import Chart, SPolyProblem, heisenberg, left_invariant_fields, spoly_basis

A = heisenberg()
B = spoly_basis(SPolyProblem.build(A, ["X1", "X2"], 2))
print(f"dimension {B.dimension}, {B.certificate}, bound nu = {B.bound.nu}")
for p in B.basis:
    print("  ", p)

X1, X2, X3 = left_invariant_fields(A, Chart.second())
print("X2 =", X2)
for text in ("x1*x2^2 - x2*x3", "x1*x2*x3 - x3^2"):
    f = B.ring.parse(text)
    print(f"{text}: X1^2 f = {X1(X1(f))}, X2^2 f = {X2(X2(f))}, X3^2 f = {X3(X3(f))}")
