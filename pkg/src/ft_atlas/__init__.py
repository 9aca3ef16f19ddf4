"""Frames of translates: Lie algebra classification, finite-group frames and Heisenberg geometry."""

from .errors import AtlasError
from .ft_classifier import FTVerdict, GroupDescriptor, classify, classify_matrix_example
from .lie_core import LieAlgebra, algebra_from_brackets, algebra_from_json, validate_algebra
from .matrix_groups import builtin_algebra

__all__ = [
    "AtlasError",
    "FTVerdict",
    "GroupDescriptor",
    "LieAlgebra",
    "algebra_from_brackets",
    "algebra_from_json",
    "builtin_algebra",
    "classify",
    "classify_matrix_example",
    "validate_algebra",
]

__version__ = "0.1.0"
