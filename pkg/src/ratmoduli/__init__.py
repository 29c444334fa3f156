"""Moduli of rational maps of degree 2 and 3 via invariants of binary forms."""

from .conic import Conic, has_rational_point, parametrize
from .errors import RatModuliError
from .field import QQ, FieldElement, format_element, parse_element, quadratic_field
from .forms import FormPair, RationalMap, conjugate, fixed_point_multiplier, merge, resultant, split
from .inv2 import InvariantTuple2, invariants2, sigma_from_s
from .inv3 import InvariantTuple3, invariants3, invariants3_appendix
from .moduli import ModuliPoint2, ModuliPoint3, Stratum, classify_aut, validate2, validate3, wp_equal
from .poly import BinaryForm, transvect
from .reconstruct import DescentResult, descend3, reconstruct2

__all__ = [
    "BinaryForm", "Conic", "DescentResult", "FieldElement", "FormPair", "InvariantTuple2",
    "InvariantTuple3", "ModuliPoint2", "ModuliPoint3", "QQ", "RatModuliError", "RationalMap",
    "Stratum", "classify_aut", "conjugate", "descend3", "fixed_point_multiplier",
    "format_element", "has_rational_point", "invariants2", "invariants3",
    "invariants3_appendix", "merge", "parametrize", "parse_element", "quadratic_field",
    "reconstruct2", "resultant", "sigma_from_s", "split", "transvect", "validate2",
    "validate3", "wp_equal",
]
