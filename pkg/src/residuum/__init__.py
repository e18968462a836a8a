"""Residuated preference algebras and soft-CSP solvers built on them."""
from .core import EXHAUSTIVE, Order, PreferenceAlgebra, brute_force_residual, maximal
from .csp import Constraint, Problem, parse_problem, problem_from_dict
from .elimination import (
    MIN_DEGREE,
    NAME_LEX,
    Solution,
    bucket_distance,
    bucket_eliminate,
    composed_approx,
    mini_bucket_eliminate,
    mu_of_partition,
    refined_mini_bucket_approx,
)
from .errors import ResiduumError
from .instances import Chain, ExtendedInt, FlatCapped, PowerSet, Product, Tropical, make_algebra
from .laws import check_laws
from .lex import LexAlgebra, LexOmegaAlgebra, LexTuple, OmegaTuple, Tail
from .search import MiniBucketUB, TrivialUB, brute_force_solve, soft_dfbb

__version__ = "0.1.0"
