"""Symbolic intersection theory for the universal Picard stack over the hyperelliptic locus."""

from .arith import AbelianGroup, IntegerMatrix, Rational, cokernel, smith_normal_form, subgroup_index_in_Z
from .poly import Ideal, Poly, VariableTable, groebner, ideal_equal, normal_form, substitute
from .tower import SplittingType, TowerElement, TowerRing, make_tower, push_gamma, push_pi, restrict_to_splitting

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "IntegerMatrix",
    "Rational",
    "cokernel",
    "smith_normal_form",
    "subgroup_index_in_Z",
    "Ideal",
    "Poly",
    "VariableTable",
    "groebner",
    "ideal_equal",
    "normal_form",
    "substitute",
    "SplittingType",
    "TowerElement",
    "TowerRing",
    "make_tower",
    "push_gamma",
    "push_pi",
    "restrict_to_splitting",
]
