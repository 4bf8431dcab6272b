"""An inhomogeneous direction on the Engel algebra, solved through the free algebra.

X1 + X3 mixes layers, so graded blocks do not apply; the solver lifts the
problem to the free step-3 algebra and pulls the answer back.  A plain
total-degree ansatz agrees once its degree reaches the top degree found.
"""
from nilpoly import SPolyProblem, engel, spoly_basis
from nilpoly.solver import same_span

problem = SPolyProblem.build(engel(), [{"X1": 1, "X3": 1}, "X2"], 2)
B = spoly_basis(problem)
top = max(p.degree() for p in B.basis)
print(f"dimension {B.dimension} via {B.method} ({B.certificate}), top total degree {top}")
for N in (top - 1, top, top + 2):
    D = spoly_basis(problem, degree=N, method="direct")
    print(f"  direct ansatz of degree {N}: dimension {D.dimension}, same span: {same_span(D.basis, B.basis)}")
