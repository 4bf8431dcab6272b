"""Horizontally affine functions on Heisenberg and Engel groups in both charts."""
from nilpoly import Chart, SPolyProblem, engel, heisenberg, pushforward, spoly_basis
from nilpoly.solver import SUBSPACE, canonical_basis

for A in (heisenberg(), engel()):
    B = spoly_basis(SPolyProblem.build(A, ["X1", "X2"], 2, mode=SUBSPACE))
    first = canonical_basis(pushforward(A, Chart.second(), Chart.first(), p) for p in B.basis)
    print(f"{A.name}: dimension {B.dimension} ({B.certificate})")
    print("  second kind:", ", ".join(map(str, B.basis)))
    print("  first kind: ", ", ".join(map(str, first)))
