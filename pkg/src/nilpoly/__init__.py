"""Exact S-polynomial function spaces on nilpotent Lie groups."""
from .bounds import DegreeBoundWitness, degree_bound
from .builtins import abelian, aff_plus, builtin, engel, f23, heisenberg, sl2r
from .counterexamples import CounterexampleReport, verify_builtin_counterexample
from .derivation import Derivation, OperatorWord, apply_derivation, apply_word
from .group import (
    Chart,
    ChartError,
    bch,
    bch_product,
    chart_convert,
    chart_maps,
    dilate,
    group_inverse,
    left_invariant_fields,
    pushforward,
    right_translation,
)
from .hall import AlgebraHom, extend_hom, free_nilpotent, hall_basis
from .lie import (
    LCSChain,
    LieAlgebra,
    LieAlgebraError,
    NotNilpotentError,
    Ad_exp,
    bracket,
    lie_generates,
    lower_central_series,
    validate,
)
from .linalg import RationalMatrix, kernel_basis, rank, rref
from .poly import Polynomial, Ring, RingMismatchError
from .solver import NotLieGeneratingError, SPolyBasis, SPolyProblem, canonical_basis, same_span, spoly_basis
from .verify import (
    PreconditionError,
    differential_degree,
    lcs_invariance,
    leibman_check,
    leibman_degree,
    restrict_along_flows,
    taylor_coefficients,
    vandermonde_fit,
    verify_representation,
)

__version__ = "0.1.0"
