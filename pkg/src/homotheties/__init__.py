"""Homotheties in the images of mod-p Galois representations of elliptic curves.

Finite-group machinery for GL_2(F_p) (named subgroups, classification,
exhaustive small-p checks) together with the bounds and exponent casework
that guarantee scalar matrices in the image.
"""

from .errors import DomainError, InputError, ResourceError
from .fp import PrimeModulus, Scalar, check_modulus, mult_order, primitive_root
from .gl2 import Mat2, ProjLine, char_poly, element_order, pgl_order, stable_lines
from .irreducible import (
    FieldProfile,
    HomothetyGuarantee,
    irreducible_theorem_I,
    irreducible_theorem_II,
    q_theorem,
)
from .reducible import (
    ApEntry,
    ApFamily,
    FrobeniusData,
    ReducibleOutcome,
    ap_from_table,
    classify_ap_family,
    combine_ap_pair,
    frobenius_norm_divisor,
    uniform_bound_reducible,
)
from .subgroups import ClassificationReport, Subgroup, classify, generate

__version__ = "0.1.0"
