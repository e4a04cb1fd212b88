"""Linear monads on projective space: construction, verification, existence."""

__version__ = "0.1.0"

from .field import FieldSpec
from .poly import PolyRing, Polynomial, poly_arith
from .matrix import PolyMatrix, ProjPoint, evaluate_at_point, matrix_mul, rank_over_field
from .points import enumerate_projective_points, projective_points
from .series import TruncatedSeries, series_power
from .construct import (MonadInstance, MonadShape, build_banded, build_base_complex, build_sigma,
                        compose_general_injection, construct_monad, dualize, restrict_to_subspace)
from .verify import (check_beta_surjective, check_complex, estimate_codimension, generic_rank, strata_counts,
                     verify_lemma2, verify_monad)
from .chern import ComplexSpec, ComplexTerm, F2Params, chern_of_complex, f2_complex_spec, solve_rank2_constraints
from .classify import conjecture_predicate, decide, explore_conjecture, witness_search

__all__ = [
    "FieldSpec", "PolyRing", "Polynomial", "poly_arith", "PolyMatrix", "ProjPoint", "evaluate_at_point",
    "matrix_mul", "rank_over_field", "enumerate_projective_points", "projective_points", "TruncatedSeries",
    "series_power", "MonadInstance", "MonadShape", "build_banded", "build_base_complex", "build_sigma",
    "compose_general_injection", "construct_monad", "dualize", "restrict_to_subspace", "check_beta_surjective",
    "check_complex", "estimate_codimension", "generic_rank", "strata_counts", "verify_lemma2", "verify_monad",
    "ComplexSpec", "ComplexTerm", "F2Params", "chern_of_complex", "f2_complex_spec", "solve_rank2_constraints",
    "conjecture_predicate", "decide", "explore_conjecture", "witness_search",
]
