"""Brute-force F_p oracle for free and free restricted Lie algebras."""

from .algebra import AlgebraElement, coerce_expr, index_word, to_associative, word_index
from .closure import (
    COLUMN_LIMIT,
    Closure,
    GradedifyReport,
    Mode,
    SubalgebraBasis,
    check_resource,
    closure,
    free_lie_basis,
    graded_dims,
    gradedify,
    intersection_dims,
)
from .commutators import BasicCommutator, enumerate_basic_commutators, p_power_expr
from .expr import Bracket, Gen, LieExpr, PPower, Sum, format_expr, parse_expr
from .linalg import GradedEchelon

__all__ = [
    "AlgebraElement",
    "BasicCommutator",
    "Bracket",
    "COLUMN_LIMIT",
    "Closure",
    "Gen",
    "GradedEchelon",
    "GradedifyReport",
    "LieExpr",
    "Mode",
    "PPower",
    "SubalgebraBasis",
    "Sum",
    "check_resource",
    "closure",
    "coerce_expr",
    "enumerate_basic_commutators",
    "format_expr",
    "free_lie_basis",
    "graded_dims",
    "gradedify",
    "index_word",
    "intersection_dims",
    "p_power_expr",
    "parse_expr",
    "to_associative",
    "word_index",
]
